"""Connected vs disconnected counts: the exponential identity.

The partition function (the series of possibly-disconnected maps) can be
built directly by exponentiating the one-step insertion operator against
the constant 1.  It must coincide, term by term, with the formal
exponential of the connected series - a strong joint test of the
operators and the recursion, since the two sides are computed by
completely different routes.
"""

from dessins import ConnectedSeries, exp_series, partition_function

D = 8

z = partition_function(D)
connected = ConnectedSeries.compute(D)
e = exp_series(connected.combined())

print(f"truncation {D}: partition function has {len(z)} terms, "
      f"exp(connected) has {len(e)} terms")
assert z == e
print("identical, term by term\n")

# low-weight terms, readable: weight 2 already mixes a disconnected type
print("terms of weight <= 2:")
for key, c in z.sorted_items():
    if key.weight() <= 2:
        print(f"  k={key.k} l={key.l} m={key.m}: {c}")

# the u^2 v^2 t1^2 term is the unordered pair of two one-edge maps;
# its coefficient 1/2 is the 1/2! symmetry factor between components
print("\ncoefficient of (u v t1)^2:", z.coefficient(2, 2, (2,)))

# connected counts never contain that key (it has two components)
print("connected coefficient at the same key:",
      connected.coefficient(2, 2, (2,)))
