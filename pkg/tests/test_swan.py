import math

import pytest

from cycloswan.bigarith import DomainError, euler_phi
from cycloswan.cyclofield import InertnessError, make_field
from cycloswan.swan import (
    BruteForceRefused,
    Exactness,
    Method,
    brute_force_subgroup_order,
    exactness,
    load_reference_tables,
    swan_order,
    verify_reference_tables,
)
from cycloswan.units import enumerate_generators


@pytest.mark.parametrize("m,p,cok,flag", [
    (3, 5, 1, Exactness.EXACT),
    (9, 5, 7, Exactness.EXACT),
    (11, 7, 764, Exactness.EXACT),
    (4, 7, 2, Exactness.EXACT),
    (5, 13, 17, Exactness.EXACT),
    (23, 5, 1061481, Exactness.UPPER_BOUND),
])
def test_swan_order_examples(m, p, cok, flag):
    res = swan_order(m, p)
    assert res.cokernel_order == cok
    assert res.exactness is flag
    assert res.cokernel_order * res.subgroup_order == res.group_order
    assert res.group_order % res.cokernel_order == 0
    assert res.subgroup_order % math.lcm(m, p - 1) == 0
    assert res.coprimality_gcd == math.gcd(cok, (p - 1) // 2)
    assert res.complete


def test_exactness_examples():
    assert exactness(9, 5) is Exactness.EXACT
    assert exactness(23, 5) is Exactness.UPPER_BOUND
    assert exactness(37, 5) is Exactness.UPPER_BOUND
    assert exactness(31, 3) is Exactness.EXACT


def test_swan_order_errors():
    with pytest.raises(InertnessError):
        swan_order(13, 5)
    with pytest.raises(DomainError):
        swan_order(9, 3)
    with pytest.raises(DomainError):
        swan_order(4, 2)
    with pytest.raises(DomainError):
        swan_order(4, 9)


def test_methods_are_reported():
    assert swan_order(9, 5).method is Method.BOTH
    assert swan_order(9, 5, method="full").method is Method.FULL
    assert swan_order(2, 11).method is Method.FULL
    assert swan_order(9, 5, method="reduced").cokernel_order == 7


def test_torsion_diagnostic_on_small_field():
    # For m = 2 the torsion contributes nothing new: -1 is already a frac image.
    res = swan_order(2, 11)
    assert res.subgroup_order_without_torsion == res.subgroup_order
    assert not res.torsion_sensitive


def test_closing_example_readings():
    assert swan_order(2, 11).cokernel_order == 1
    assert swan_order(3, 11).cokernel_order == 2


def test_partial_factorization_degrades_softly():
    res = swan_order(59, 11, method="reduced", budget=0.0)
    assert not res.complete
    assert res.unfactored
    assert res.cokernel_order * res.subgroup_order == res.group_order
    tabled = 13443299128571962495037599194
    # The true upper bound divides the degraded one.
    assert res.cokernel_order % tabled == 0


def test_brute_force_examples():
    f = make_field(3, 5)
    assert brute_force_subgroup_order([], f) == 1
    assert brute_force_subgroup_order(enumerate_generators(3, 5), f) == 24
    with pytest.raises(BruteForceRefused):
        brute_force_subgroup_order([], make_field(11, 7))


def test_reference_tables_resource():
    t = load_reference_tables()
    assert len(t["table_2_2"]) == 48
    assert len(t["table_2_4"]) == 30
    assert len(t["table_4_8"]) == 30
    assert {(r["m"], r["p"]) for r in t["table_4_8"]} == {(r["m"], r["p"]) for r in t["table_2_4"]}


def test_tabled_values_divide_group_order():
    for row in load_reference_tables()["table_4_8"]:
        n = row["p"] ** euler_phi(row["m"]) - 1
        assert n % int(row["value"]) == 0, (row["m"], row["p"])


def test_verify_default_report():
    report = verify_reference_tables()
    assert report.ok
    by_table = {}
    for r in report.rows:
        by_table.setdefault(r.table, []).append(r)
    assert all(r.status == "pass" for r in by_table["2.2"]) and len(by_table["2.2"]) == 48
    assert all(r.status == "pass" for r in by_table["2.4"]) and len(by_table["2.4"]) == 30
    swan_rows = {(r.m, r.p): r for r in by_table["4.8"]}
    assert swan_rows[(13, 7)].status == "pass"
    assert swan_rows[(13, 7)].computed == "=13575"
    assert swan_rows[(13, 7)].coprimality_gcd == 3
    assert swan_rows[(97, 5)].status == "skipped"
    assert [r for r in report.flagged()] == [swan_rows[(13, 7)]]
    closing = {(r.m, r.p): r.status for r in by_table["closing"]}
    assert closing == {(4, 7): "pass", (5, 13): "pass", (2, 11): "reported", (3, 11): "reported"}


def test_verify_detects_tampering():
    tables = load_reference_tables()
    tables["table_4_8"][0]["value"] = "2"
    tables["table_2_4"][0]["p"] = 7
    report = verify_reference_tables(max_m=3, tables=tables)
    assert not report.ok
    failed = [(r.table, r.m) for r in report.rows if r.status == "fail"]
    assert failed == [("2.4", 3), ("4.8", 3)]


def test_verify_large_rows_need_budget():
    report = verify_reference_tables(max_m=43)
    row = next(r for r in report.rows if r.table == "4.8" and (r.m, r.p) == (41, 7))
    assert row.status == "skipped"
    report = verify_reference_tables(max_m=43, time_budget=30)
    rows = {(r.m, r.p): r.status for r in report.rows if r.table == "4.8"}
    assert rows[(41, 7)] == "pass" and rows[(43, 3)] == "pass"
