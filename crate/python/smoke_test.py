"""Smoke test for the Python extension.

Build and place the module next to this script first:

    cargo build --release -p subcube-python
    cp target/release/libsubcube_py.so python/subcube_py.so
    python3 python/smoke_test.py
"""

import subcube_py as sp

s4 = sp.family("s", 4)
assert len(s4) == 7 and s4.n == 4 and s4.q == 2
assert s4.is_partition() and s4.is_tight() and s4.is_irreducible()
assert s4.weight_vector() == [1, 3, 2, 0, 1]

text = s4.to_text()
assert sp.SubcubeCollection.parse(text) == s4
assert s4.canonical() == s4.canonical().canonical()

reducible = sp.SubcubeCollection(2, ["0*", "10", "11"])
assert reducible.is_partition() and not reducible.is_irreducible()
assert reducible.witness() == (["10", "11"], "1*")

avsp, condition = sp.compress(s4)
assert condition and len(avsp) == 6 and avsp.is_tight() and avsp.is_partition()
assert [len(sp.avsp_family(n)) for n in range(3, 10)] == [4, 6, 7, 8, 10, 11, 13]

ternary = sp.expand(sp.family("s", 3), 3)
assert ternary.q == 3 and ternary.is_partition() and ternary.is_irreducible()

b = sp.bounds(7)
assert b.max_size_upper == 83 and b.min_size_lower == 10
assert sp.bounds(100).max_size_upper > 2**64

r = sp.search("min-size", 4)
assert r.status == "found" and r.value == 7 and r.classes == 2
first = sp.SubcubeCollection.parse(r.certificates[0])
assert len(first) == 7 and first.is_irreducible()

t = sp.search("max-points", 4, budget=10)
assert t.status == "truncated" and not t.complete

try:
    sp.family("s", 2)
except ValueError:
    pass
else:
    raise AssertionError("expected ValueError")

print("python smoke test: ok")
