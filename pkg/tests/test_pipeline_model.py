import pytest

from rmipa.pipeline_model import (
    INTERPRETATION_NOTE,
    PipelineConfig,
    latency_general,
    latency_r2,
    pu_count_full_parallel,
    reg_array_depth,
    report,
    schedule_table,
    throughput_general,
    throughput_r2,
)
from rmipa.rm_core import ParameterError


@pytest.mark.parametrize("P, latency, thr", [(2, 156, 1110), (4, 92, 2220), (8, 60, 4440)])
def test_table_ii(P, latency, thr):
    cfg = PipelineConfig(m=7, r=2, P=P, f_mhz=555, t_fod=4, n_max=2)
    assert latency_r2(cfg) == latency
    assert throughput_r2(cfg) == thr


@pytest.mark.parametrize("P, n_dec, latency, thr", [(16, None, 294, 357), (32, None, 168, 714), (64, 2, 106, 1428)])
def test_table_i(P, n_dec, latency, thr):
    cfg = PipelineConfig(m=6, r=3, P=P, f_mhz=714, t_fod=4, n_max=2, n_dec=n_dec)
    assert latency_general(cfg) == latency
    printed, effective = throughput_general(cfg)
    assert effective == thr
    assert printed == pytest.approx(P * 714 * 64 / (63 * 32))


def test_as_printed_throughput_discrepancy():
    printed, effective = throughput_general(PipelineConfig(6, 3, 16, 714))
    assert printed == pytest.approx(362.6667, abs=1e-4)
    assert printed / effective == pytest.approx(64 / 63)


def test_reg_array_depth():
    assert reg_array_depth(PipelineConfig(7, 2, 4, 555)) == 2
    for m in range(3, 9):
        assert reg_array_depth(PipelineConfig(m, 2, 1, 100)) == 2
        full = PipelineConfig(m, 2, 2**m, 100, t_fod=3)
        assert reg_array_depth(full) == full.t_proj + full.t_fod + 1


def test_pu_count_full_parallel():
    assert pu_count_full_parallel(6, 3) == 2016
    assert pu_count_full_parallel(7, 2) == 128
    for m in range(2, 9):
        assert pu_count_full_parallel(m, 2) == 2**m


def test_throughput_trivial():
    assert throughput_r2(PipelineConfig(5, 2, 1, 100)) == 100


@pytest.mark.parametrize("kw", [dict(P=3), dict(P=0), dict(t_fod=5), dict(P=256), dict(r=1), dict(n_max=0)])
def test_config_validation(kw):
    base = dict(m=7, r=2, P=4, f_mhz=555)
    base.update(kw)
    with pytest.raises(ParameterError):
        PipelineConfig(**base)


def test_n_dec_needs_enough_pus():
    with pytest.raises(ParameterError):
        PipelineConfig(6, 3, 32, 714, n_dec=2)


@pytest.mark.parametrize("m, r", [(7, 2), (6, 3), (8, 2), (7, 3)])
def test_monotone_in_pus(m, r):
    Ps = [2**p for p in range(0, 11) if 2**p <= pu_count_full_parallel(m, r)]
    lat = [latency_general(PipelineConfig(m, r, P, 500)) for P in Ps]
    thr = [throughput_general(PipelineConfig(m, r, P, 500))[1] for P in Ps]
    assert all(a >= b for a, b in zip(lat, lat[1:]))
    assert all(a <= b for a, b in zip(thr, thr[1:]))


def test_report_outputs():
    rep = report(PipelineConfig(6, 3, 32, 714))
    assert rep.latency_cycles == 168 and rep.throughput_mbps == 714
    assert rep.latency_us == pytest.approx(0.235, abs=5e-4)
    assert rep.note == INTERPRETATION_NOTE
    text = rep.to_text()
    assert "latency_cycles" in text and "fitted" in text
    csv = rep.to_csv().splitlines()
    assert csv[0] == "param,value"
    assert "latency_cycles,168" in csv
    assert report(PipelineConfig(7, 2, 4, 555)).note == ""


def test_schedule_table_shape():
    table = schedule_table(3, frames=2).splitlines()
    assert len(table) == 1 + 2 * 8 + 2
    assert table[1].split()[1] == "0:0"
    assert table[-1].split()[-1] == "1:7"
