import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmipa import fixed_point as fx
from rmipa.fixed_point import QuantSpec, QVal, fht_fixed, quantize, sat_add, sat_negate, shift_div2
from rmipa.projection import minsum_rule
from rmipa.rm_core import ParameterError, fht

Q32 = QuantSpec(3, 2)


def test_quant_spec():
    assert Q32.width == 5
    assert QuantSpec.parse("3:2") == Q32
    assert QuantSpec.parse("Q(2:1)") == QuantSpec(2, 1)
    assert str(Q32) == "Q(3:2)"
    with pytest.raises(ParameterError):
        QuantSpec.parse("3-2")
    with pytest.raises(ParameterError):
        QuantSpec(0, 2)


@pytest.mark.parametrize("x, raw", [(0.0, 0), (100.0, 15), (-100.0, -16), (-0.625, -3), (0.625, 3), (0.6, 2), (3.74, 15)])
def test_quantize(x, raw):
    q = quantize(x, Q32)
    assert q.raw == raw and q.width == 5
    assert q.scale == 0.25


def test_quantize_saturation_bound():
    assert quantize(100.0, Q32).value == 3.75


def test_qval_range_enforced():
    with pytest.raises(OverflowError):
        QVal(16, 5)
    with pytest.raises(OverflowError):
        QVal(-17, 5)


def test_sat_add():
    mx = QVal(15, 5, 2)
    assert sat_add(mx, mx, widen=True) == QVal(30, 6, 2)
    assert sat_add(mx, mx, widen=False) == QVal(15, 5, 2)
    assert sat_add(QVal(-7, 5, 2), QVal(7, 5, 2), widen=False).raw == 0
    with pytest.raises(ParameterError):
        sat_add(QVal(1, 5, 2), QVal(1, 5, 1), widen=True)


def test_sat_negate():
    assert sat_negate(QVal(5, 5)).raw == -5
    assert sat_negate(QVal(-16, 5)).raw == 15
    assert sat_negate(QVal(-16, 5), wrap=True).raw == -16


@given(st.integers(-15, 15))
def test_double_negation(raw):
    a = QVal(raw, 5)
    assert sat_negate(sat_negate(a)) == a


@pytest.mark.parametrize("raw, out", [(7, 3), (-7, -4), (0, 0), (-1, -1)])
def test_shift_div2(raw, out):
    assert shift_div2(QVal(raw, 6)).raw == out


@given(st.integers(-16, 15), st.integers(-16, 15))
def test_tree_node_is_floor_mean(a, b):
    s = shift_div2(sat_add(QVal(a, 5), QVal(b, 5), widen=True))
    assert s.raw == (a + b) // 2
    assert s.width == 5


def test_fht_fixed_examples():
    out = fht_fixed([QVal(0, 5)] * 8, 3)
    assert all(q.raw == 0 and q.width == 8 for q in out)
    out = fht_fixed([QVal(1, 5), QVal(1, 5)], 1)
    assert [q.raw for q in out] == [2, 0] and out[0].width == 6
    with pytest.raises(ParameterError):
        fht_fixed([QVal(1, 5)] * 3, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda m: st.lists(st.integers(-16, 15), min_size=2**m, max_size=2**m)))
def test_fht_fixed_matches_float(raws):
    m = len(raws).bit_length() - 1
    out = fht_fixed([QVal(r, 5, 2) for r in raws], m)
    np.testing.assert_array_equal([q.value for q in out], fht(np.array(raws) * 0.25))
    assert all(q.width == 5 + m for q in out)


@settings(max_examples=200, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10))
def test_minsum_commutes_with_quantization(x, y):
    a, b = fx.quantize_array(x, Q32), fx.quantize_array(y, Q32)
    fixed = fx.minsum_array(a, b, Q32.width)
    float_route = fx.quantize_array(minsum_rule(fx.dequantize(a, Q32), fx.dequantize(b, Q32)), Q32)
    assert int(fixed) == int(float_route)


def test_negate_array_modes():
    raw = np.array([-16, -3, 0, 15])
    np.testing.assert_array_equal(fx.negate_array(raw, 5), [15, 3, 0, -15])
    np.testing.assert_array_equal(fx.negate_array(raw, 5, wrap=True), [-16, 3, 0, -15])
