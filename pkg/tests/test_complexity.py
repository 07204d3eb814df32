import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subthz_ee.complexity import (BLOCKS, SPECTRAL_EFFICIENCIES, ComplexityParams,
                                  ModulationScheme, StreamConfig, WaveformNumerology,
                                  bb_rx_power, bb_tx_power, channel_est_complexity,
                                  complexity_report, demapper_complexity,
                                  equalizer_complexity, fft_complexity, filter_complexity,
                                  ldpc_dec_complexity, ldpc_enc_complexity, mapping_complexity,
                                  maxlogmap_ops, netctrl_complexity, nn_demapper_ops,
                                  pn_comp_complexity, ptrs_cp_insertion_complexity)
from subthz_ee.errors import DomainError

P = ComplexityParams()
W = WaveformNumerology()
SC = StreamConfig()
FC_G = 3.93216  # symbol rate in GHz

# Frozen values from hand evaluation of the closed forms at the default parameters.
GOLDEN = {
    ("ldpc_enc", 2): 14 / 24 * 2 * FC_G,
    ("ldpc_enc", 8): 14 / 24 * 8 * FC_G,
    ("ldpc_dec", 2): 50 * 35 / 6 * 2 * FC_G,
    ("ldpc_dec", 8): 50 * 35 / 6 * 8 * FC_G,
    ("mapping", 2): 2 ** 1.5 * FC_G,
    ("mapping", 8): 8 ** 1.5 * FC_G,
}


def test_golden_frozen_numbers():
    assert GOLDEN[("ldpc_enc", 2)] == pytest.approx(4.58752)
    assert GOLDEN[("ldpc_dec", 8)] == pytest.approx(9175.04)
    assert GOLDEN[("mapping", 8)] == pytest.approx(88.9746, rel=1e-5)


@pytest.mark.parametrize("s", [2, 8])
def test_ldpc_and_mapping_match_hand_values(s):
    assert ldpc_enc_complexity(P, s, SC, W) == pytest.approx(GOLDEN[("ldpc_enc", s)], rel=1e-12)
    assert ldpc_dec_complexity(P, s, SC, W) == pytest.approx(GOLDEN[("ldpc_dec", s)], rel=1e-12)
    assert mapping_complexity(s, SC, W) == pytest.approx(GOLDEN[("mapping", s)], rel=1e-12)


def test_published_values():
    assert ldpc_enc_complexity(P, 2, SC, W) == pytest.approx(4.6, rel=0.01)
    assert ldpc_enc_complexity(P, 8, SC, W) == pytest.approx(18.4, rel=0.01)
    assert ldpc_enc_complexity(P, 4, SC, W) == pytest.approx(9.17, abs=0.01)
    assert ldpc_dec_complexity(P, 2, SC, W) == pytest.approx(2293, rel=0.01)
    assert ldpc_dec_complexity(P, 8, SC, W) == pytest.approx(9175, rel=0.01)
    assert mapping_complexity(2, SC, W) == pytest.approx(11, rel=0.02)
    assert mapping_complexity(4, SC, W) == pytest.approx(31.46, abs=0.01)
    assert mapping_complexity(8, SC, W) == pytest.approx(89, rel=0.01)
    assert ptrs_cp_insertion_complexity(P, W, SC) == pytest.approx(0.373, abs=5e-4)
    assert filter_complexity(P, SC, W) == pytest.approx(1258.3, abs=0.05)
    assert fft_complexity(P, SC, W) == pytest.approx(76.68, abs=0.01)
    assert channel_est_complexity(P, SC, W) == pytest.approx(0.393, abs=5e-4)
    assert equalizer_complexity(P, "ZF", SC, W) == pytest.approx(3.65, abs=0.01)
    assert equalizer_complexity(P, "MMSE", SC, W) == pytest.approx(29908, rel=0.005)
    assert pn_comp_complexity(P, W, SC) == pytest.approx(3.73, abs=0.01)
    assert demapper_complexity(P, "MaxLogMap", 2, SC, W) == pytest.approx(110.1, abs=0.05)
    assert demapper_complexity(P, "MaxLogMap", 6, SC, W) == pytest.approx(5992.6, abs=0.1)


def test_nn_demapper_op_counts():
    assert nn_demapper_ops(P, 2) == 8898
    assert nn_demapper_ops(P, 6) == 9414
    assert nn_demapper_ops(P, 4) - nn_demapper_ops(P, 2) == 2 * 129
    assert demapper_complexity(P, "NN", 2, SC, W) == pytest.approx(8898 * FC_G, rel=1e-12)
    assert maxlogmap_ops(2) == 28


def test_netctrl_table_lookup():
    assert netctrl_complexity(P, "DL", 2, SC) == 669
    assert netctrl_complexity(P, "UL", 8, SC) == 1768
    assert netctrl_complexity(P, "DL", 4, StreamConfig(K=2)) == 2672
    with pytest.raises(DomainError):
        netctrl_complexity(P, "XL", 2, SC)
    with pytest.raises(DomainError):
        netctrl_complexity(P, "DL", 3, SC)


def test_degenerate_inputs_give_zero():
    assert ldpc_enc_complexity(P, 2, SC, WaveformNumerology(fc=0, fs=0)) == 0
    assert ldpc_dec_complexity(replace(P, n_it=0), 8, SC, W) == 0
    assert ptrs_cp_insertion_complexity(P, replace(W, n_CP=0, n_PTRS=0), SC) == 0
    assert filter_complexity(replace(P, n_taps=0), SC, W) == 0
    assert equalizer_complexity(replace(P, r_data=0), "ZF", SC, W) == 0
    assert pn_comp_complexity(replace(P, n_comp_sample=0), replace(W, n_PTRS=1), SC) == 0


def test_unit_ratio_cases():
    w = replace(W, n_CP=W.n_block, n_PTRS=0)
    assert ptrs_cp_insertion_complexity(P, w, SC) == pytest.approx(FC_G)
    p = replace(P, r_DMRS=1.0, n_op_div=1.0)
    assert channel_est_complexity(p, SC, W) == pytest.approx(FC_G)
    p = replace(P, n_stages=1, n_op_bfl=2, n_sym_bfl=2)
    assert fft_complexity(p, SC, WaveformNumerology(fc=1.0, fs=4.0)) * 1e9 == pytest.approx(1.0)


def test_derived_examples():
    assert filter_complexity(P, StreamConfig(M=2), W) == pytest.approx(2516.6, abs=0.1)
    assert fft_complexity(replace(P, n_stages=14), SC, W) == pytest.approx(82.58, abs=0.01)
    pn8 = pn_comp_complexity(replace(P, n_op_interp=8), W, SC)
    extra = 127 * 4 * 13 / (14 * 4384) * FC_G
    assert pn8 == pytest.approx(pn_comp_complexity(P, W, SC) + extra, rel=1e-12)
    assert pn8 == pytest.approx(4.15, abs=0.01)


def test_rx_filter_override():
    p = replace(P, n_taps_rx=20)
    assert filter_complexity(p, SC, W, "rx") == pytest.approx(filter_complexity(P, SC, W) / 2)
    with pytest.raises(DomainError):
        filter_complexity(P, SC, W, "both")


def test_baseband_power_examples():
    p = replace(P, E_intr=1000.0)
    tx = (4.59 + 11.12 + 0.37 + 1258.3 + 669) * 1.5 / 1000
    assert bb_tx_power(p, 2) == pytest.approx(tx, abs=2e-3)
    assert bb_tx_power(p, 2) == pytest.approx(2.915, abs=1e-3)
    rx = (1258.3 + 153.4 + 3.65 + 3.73 + 110.1 + 2293.8 + 443) * 1.5 / 1000
    assert bb_rx_power(p, 2) == pytest.approx(rx, abs=2e-3)
    assert bb_rx_power(p, 2) == pytest.approx(6.40, abs=0.005)
    assert bb_tx_power(replace(p, OV=3.0), 2) == pytest.approx(2 * bb_tx_power(p, 2))


def test_mmse_minus_zf_sum():
    p = replace(P, OV=1.0, E_intr=1.0)
    delta = bb_rx_power(p, 2, "MMSE") - bb_rx_power(p, 2, "ZF")
    assert delta == pytest.approx(29909, abs=5)


def test_all_zero_complexity_gives_zero_power():
    p = ComplexityParams(dc=0, n_it=0, n_op_ins=0, n_op_filt=0, n_stages=0, n_op_ZF=0,
                         n_op_interp=0, n_comp_sample=0, netctrl_scale=0)
    w = WaveformNumerology(fc=0.0, fs=0.0)
    assert bb_tx_power(p, 2, w=w) == 0
    assert bb_rx_power(p, 2, w=w) == 0


def _oracle_sum(p, s, eq, demap):
    r = complexity_report(p, s, eq_kind=eq, demap_kind=demap).blocks
    tx = r["ldpc_enc"] + r["mapping"] + r["ptrs_cp_ins"] + r["tx_filter"] + r["netctrl_dl"]
    rx = (r["rx_filter"] + r["fft"] + r["ifft"] + r["equalizer"] + r["pn_comp"]
          + r["demapper"] + r["ldpc_dec"] + r["netctrl_ul"])
    return tx * p.OV / p.E_intr, rx * p.OV / p.E_intr


@settings(max_examples=50, deadline=None)
@given(s=st.sampled_from(SPECTRAL_EFFICIENCIES), eq=st.sampled_from(["ZF", "MMSE"]),
       demap=st.sampled_from(["MaxLogMap", "NN"]), ov=st.floats(1, 3),
       e=st.floats(10, 1e5))
def test_aggregates_match_summation_oracle(s, eq, demap, ov, e):
    p = replace(P, OV=ov, E_intr=e)
    tx, rx = _oracle_sum(p, s, eq, demap)
    assert bb_tx_power(p, s) == pytest.approx(tx, rel=1e-12)
    assert bb_rx_power(p, s, eq, demap) == pytest.approx(rx, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.01, 100), k=st.integers(1, 8), s=st.sampled_from(SPECTRAL_EFFICIENCIES))
def test_linear_in_rate_and_streams(alpha, k, s):
    base = complexity_report(P, s).blocks
    w = WaveformNumerology(fc=W.fc * alpha, fs=W.fs * alpha)
    scaled = complexity_report(P, s, w=w).blocks
    streamed = complexity_report(P, s, StreamConfig(K=k, M=k)).blocks
    for b in BLOCKS:
        if b.startswith("netctrl"):
            assert scaled[b] == base[b]
        else:
            assert scaled[b] == pytest.approx(alpha * base[b], rel=1e-12)
        assert streamed[b] == pytest.approx(k * base[b], rel=1e-12)


def test_monotone_in_s():
    for name in ("ldpc_enc", "ldpc_dec", "mapping", "demapper", "netctrl_dl", "netctrl_ul"):
        values = [complexity_report(P, s).blocks[name] for s in SPECTRAL_EFFICIENCIES]
        assert all(b > a for a, b in zip(values, values[1:])), name


def test_modulation_scheme():
    assert ModulationScheme("64QAM").s == 6
    assert ModulationScheme.from_bits(8).name == "256QAM"
    with pytest.raises(DomainError):
        ModulationScheme("8PSK")


@pytest.mark.parametrize("kwargs", [{"n_CP": 5000}, {"n_dbps": 15}, {"fc": -1.0}])
def test_waveform_validation(kwargs):
    with pytest.raises(DomainError):
        replace(W, **kwargs)


@pytest.mark.parametrize("kwargs", [{"OV": 0.5}, {"r_DMRS": 0.0}, {"E_intr": 0.0},
                                    {"n_taps": -1}, {"nn_layers": (2, 64)}])
def test_params_validation(kwargs):
    with pytest.raises(DomainError):
        replace(P, **kwargs)


def test_report_serialization():
    r = complexity_report(P, 2)
    assert r.to_csv().splitlines()[0] == "block,gflops"
    assert len(r.rows()) == len(BLOCKS) == 14
    assert math.isclose(r.tx_gflops, sum(r.blocks[b] for b in
                                         ("ldpc_enc", "mapping", "ptrs_cp_ins", "tx_filter",
                                          "netctrl_dl")))
