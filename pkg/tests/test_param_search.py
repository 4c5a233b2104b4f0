import pytest

from nmdscodes.elliptic_curve import Curve
from nmdscodes.errors import CertificationError, HypothesisError
from nmdscodes.finite_field import FieldSpec
from nmdscodes.param_search import (
    ParameterTriple,
    build_table_row,
    find_curve,
    search_parameters,
    triple_conditions,
    verify_curve,
)


def test_triple_conditions_accepts_catalog_rows():
    assert triple_conditions(7, 3) == 1
    assert triple_conditions(13, 3) == -5
    assert triple_conditions(31, 5) == -7
    assert triple_conditions(43, 7) == 5
    assert triple_conditions(343, 19) == 17


def test_triple_conditions_names_the_violated_hypothesis():
    with pytest.raises(HypothesisError, match="prime power"):
        triple_conditions(6, 3)
    with pytest.raises(HypothesisError, match="prime power"):
        triple_conditions(5, 3)
    with pytest.raises(HypothesisError, match="odd prime"):
        triple_conditions(17, 2)
    with pytest.raises(HypothesisError, match="odd prime"):
        triple_conditions(19, 9)
    with pytest.raises(HypothesisError, match="divide"):
        triple_conditions(11, 3)
    with pytest.raises(HypothesisError, match="gcd"):
        triple_conditions(8, 7)
    with pytest.raises(HypothesisError, match="Hasse"):
        triple_conditions(29, 7)


def test_search_small_window():
    assert search_parameters(7) == [
        ParameterTriple(7, 3, 1),
        ParameterTriple(43, 7, 5),
    ]
    assert search_parameters(2) == []


def test_search_with_negative_traces():
    rows = search_parameters(7, require_positive_t=False)
    assert rows == [
        ParameterTriple(7, 3, 1),
        ParameterTriple(13, 3, -5),
        ParameterTriple(31, 5, -7),
        ParameterTriple(43, 7, 5),
    ]


def test_positive_traces_all_sit_at_p_minus_2():
    rows = search_parameters(100)
    assert rows
    for row in rows:
        assert row.t == row.p - 2
        assert row.q == row.p * row.p - row.p + 1
    assert ParameterTriple(343, 19, 17) in rows


def test_triple_helpers():
    trip = ParameterTriple(7, 3, 1)
    assert trip.n == 9
    assert trip.code_parameters() == "[9,2k,9-2k]"
    assert trip.to_json()["code"] == "[9,2k,9-2k]"


def test_find_curve_reproduces_catalog_coefficients():
    for q, p, b in ((7, 3, 2), (13, 3, 3), (31, 5, 11), (43, 7, 3)):
        cert = find_curve(q, p)
        assert cert.curve.a4.coeffs == (0,)
        assert cert.curve.b.coeffs == (b,)
        assert cert.point_count == p * p
        assert cert.group.encode() == f"{p}x{p}"
        assert cert.all_p_torsion


def test_verify_curve_rejects_wrong_point_count():
    curve = Curve.from_coefficients(FieldSpec(7), 0, 1)  # 12 points
    with pytest.raises(HypothesisError, match="12 points"):
        verify_curve(curve, 3)


def test_build_table_row_smallest():
    row = build_table_row(7, 3)
    assert (row["n"], row["dim"], row["dmin"]) == (9, 6, 3)
    assert row["t"] == 1
    assert row["group"] == "3x3"
    assert row["ext_modulus"] == "4,0,1"
    assert row["xQ"] == "1"
    assert row["nmds"]
    assert row["design"] == {
        "t": 2,
        "lambda": 1,
        "lambda_dual": 5,
        "b": 12,
        "mode": "measured",
    }


def test_build_table_row_next_prime():
    row = build_table_row(13, 3)
    assert (row["n"], row["dim"], row["dmin"]) == (9, 6, 3)
    assert row["ext_modulus"] == "11,0,1"
    assert row["xQ"] == "2"
    assert row["design"]["lambda"] == 1
    assert row["design"]["b"] == 12


def test_build_table_row_larger_k():
    row = build_table_row(31, 5, k=10)
    assert (row["n"], row["dim"], row["dmin"]) == (25, 20, 5)
    assert row["design"] == {
        "t": 2,
        "lambda": 71,
        "lambda_dual": 1349,
        "b": 2130,
        "mode": "measured",
    }


def test_build_table_row_explicit_coefficient():
    row = build_table_row(7, 3, b=2)
    assert row["curve"] == build_table_row(7, 3)["curve"]
    with pytest.raises(HypothesisError):
        build_table_row(7, 3, b=1)


def test_build_table_row_rejects_bad_k():
    with pytest.raises(HypothesisError, match="multiple of p"):
        build_table_row(7, 3, k=2)
    with pytest.raises(HypothesisError, match="multiple of p"):
        build_table_row(7, 3, k=6)  # 2k = 12 > 9


def test_find_curve_rejects_inadmissible_parameters():
    with pytest.raises(HypothesisError):
        find_curve(11, 3)
