"""Quick check that the extension module imports and answers correctly."""

import knotted_tori_py as kt

v = kt.knotted_tori_infinite(1, 5, 10)
assert not v.infinite and str(v) == "finite", v

v = kt.knotted_tori_infinite(1, 6, 11)
assert v.infinite and v.explain() == "infinite: 4 | p+q+1", v
assert kt.knotted_tori_infinite_via_components(1, 6, 11).infinite

try:
    kt.knot_infinite(3, 5)
except kt.DomainError as e:
    assert "m > q+2" in str(e)
else:
    raise AssertionError("expected DomainError")

assert kt.fcs_clause(3, 3, 1, 2) == "4|x+3 and y=2"
assert kt.fcs_contains(3, 4, 2, 3) and not kt.fcs_contains(4, 4, 2, 3)
assert kt.fcs_window(3, 3, 3, 3) == [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)]
assert kt.fcs_line_witness(3, 3, 1, 1, 3) == (1, 2)

r = kt.tori_rank(1, 6, 11)
assert (r.lo, r.hi) == (2, None) and str(r) == "[2,inf)"
assert kt.tori_rank(1, 5, 10) == kt.RankInterval(0, 0)

records = kt.census((1, 1), (5, 6))
assert [(c.p, c.q, c.m) for c in records][:2] == [(1, 5, 10), (1, 6, 11)]
assert kt.census_json((1, 1), (1, 3)) == "[]"
assert kt.census_csv((1, 1), (5, 5)).splitlines()[1] == "1,5,10,finite,finite,finite,finite,finite,0,0,,,"
assert kt.consistency_counts((1, 8), (1, 48)) == (0, 0, 0)

print("smoke test passed")
