"""Tests for sweep configuration, execution, CSV persistence, and comparison."""

import dataclasses

import numpy as np
import pytest

from hrglab.experiments import (
    ANALYSES,
    FORMAT_TAG,
    ExperimentRecord,
    SweepConfig,
    compare_models,
    parse_config,
    read_csv,
    records_to_csv_bytes,
    run_cell,
    run_sweep,
    validate_records,
    write_csv,
)
from hrglab.geometry import HrgParams, theory_bounds
from hrglab.graph_params import degeneracy
from hrglab.samplers import build_edges_sweep, sample_hrg

GOLDEN_HEADER = (
    "model,n,alpha,c_or_lambda,seed,sigma,kappa,max_inner_degree,"
    "omega_lb,omega_exact,colours_greedy,edges,"
    "runtime_ms_sample,runtime_ms_build,runtime_ms_analyze,"
    "kappa_lower_const,kappa_upper_const,clique_upper_const,"
    "girg_ratio_const,error"
)


def _theory_kwargs(alpha):
    b = theory_bounds(alpha)
    return dict(
        kappa_lower_const=b.kappa_lower_const,
        kappa_upper_const=b.kappa_upper_const,
        clique_upper_const=b.clique_upper_const,
        girg_ratio_const=b.girg_ratio_const,
    )


def _record(alpha=0.75, **kwargs):
    base = dict(
        model="hrg",
        n=64,
        alpha=alpha,
        c_or_lambda=0.0,
        seed=1,
        sigma=3,
        kappa=5,
        omega_lb=4,
        colours_greedy=5,
        edges=100,
    )
    base.update(_theory_kwargs(alpha))
    base.update(kwargs)
    return ExperimentRecord(**base)


# ---------------------------------------------------------------------------
# configuration


def test_config_validation_errors():
    ok = dict(
        model="hrg",
        n_values=(64,),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        seeds=(0,),
    )
    SweepConfig(**ok)
    with pytest.raises(ValueError, match="unknown model"):
        SweepConfig(**{**ok, "model": "erdos"})
    with pytest.raises(ValueError, match="n_values"):
        SweepConfig(**{**ok, "n_values": ()})
    with pytest.raises(ValueError, match="n_values"):
        SweepConfig(**{**ok, "n_values": (0,)})
    with pytest.raises(ValueError, match="alpha"):
        SweepConfig(**{**ok, "alpha_values": (0.5,)})
    with pytest.raises(ValueError, match="alpha"):
        SweepConfig(**{**ok, "alpha_values": (1.0,)})
    with pytest.raises(ValueError, match="seed"):
        SweepConfig(**{**ok, "seeds": None})
    with pytest.raises(ValueError, match="seed"):
        SweepConfig(**{**ok, "seeds": ()})
    with pytest.raises(ValueError, match="seed"):
        SweepConfig(**{**ok, "base_seed": 1})
    with pytest.raises(ValueError, match="reps"):
        SweepConfig(**{**ok, "seeds": None, "base_seed": 1, "reps": 0})
    with pytest.raises(ValueError, match="unknown analyses"):
        SweepConfig(**{**ok, "analyses": frozenset({"pagerank"})})
    with pytest.raises(ValueError, match="exact budget"):
        SweepConfig(
            **{**ok, "n_values": (501,), "analyses": frozenset({"cliques-exact"})}
        )
    with pytest.raises(ValueError, match="thread_count"):
        SweepConfig(**{**ok, "thread_count": 0})
    with pytest.raises(ValueError, match="lambda"):
        SweepConfig(**{**ok, "model": "girg", "c_or_lambda": 0.0})
    with pytest.raises(ValueError, match="separator"):
        SweepConfig(
            **{
                **ok,
                "model": "girg",
                "c_or_lambda": 1.0,
                "analyses": frozenset({"separator"}),
            }
        )


def test_cell_seeds_explicit_and_derived():
    explicit = SweepConfig(
        model="hrg",
        n_values=(64, 128),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        seeds=(5, 9),
    )
    assert explicit.cell_seeds(64, 0.75) == [5, 9]
    assert explicit.cell_seeds(128, 0.75) == [5, 9]

    derived = SweepConfig(
        model="hrg",
        n_values=(64,),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        base_seed=9,
        reps=2,
    )
    a = derived.cell_seeds(64, 0.75)
    assert len(a) == 2 and len(set(a)) == 2
    # same cell in a larger grid (or with more reps) keeps its seeds
    wider = SweepConfig(
        model="hrg",
        n_values=(64, 128, 256),
        alpha_values=(0.6, 0.75),
        c_or_lambda=0.0,
        base_seed=9,
        reps=5,
    )
    assert wider.cell_seeds(64, 0.75)[:2] == a
    assert wider.cell_seeds(128, 0.75)[:2] != a
    assert wider.cell_seeds(64, 0.6)[:2] != a
    girg = SweepConfig(
        model="girg",
        n_values=(64,),
        alpha_values=(0.75,),
        c_or_lambda=1.0,
        base_seed=9,
        reps=2,
    )
    assert girg.cell_seeds(64, 0.75) != a  # model participates in the mix


def test_cells_enumerates_full_grid():
    cfg = SweepConfig(
        model="hrg",
        n_values=(64, 128),
        alpha_values=(0.6, 0.75),
        c_or_lambda=0.0,
        seeds=(0, 1, 2),
    )
    cells = cfg.cells()
    assert len(cells) == 12
    assert len(set(cells)) == 12


# ---------------------------------------------------------------------------
# sweeps


def test_run_sweep_populates_records_and_matches_recomputation():
    cfg = SweepConfig(
        model="hrg",
        n_values=(64, 128),
        alpha_values=(0.6, 0.75),
        c_or_lambda=0.0,
        seeds=(0, 1),
        analyses=frozenset(ANALYSES) - {"separator"},
    )
    records = run_sweep(cfg)
    assert len(records) == 8
    keys = [(r.model, r.n, r.alpha, r.seed) for r in records]
    assert keys == sorted(keys)
    for rec in records:
        assert rec.error is None
        assert rec.sigma >= 0
        assert rec.omega_lb <= rec.omega_exact <= rec.colours_greedy <= rec.kappa + 1
        assert rec.runtime_ms_sample == rec.runtime_ms_build == 0.0

    probe = records[0]
    pts = sample_hrg(HrgParams(n=probe.n, alpha=probe.alpha, C=0.0), probe.seed)
    g = build_edges_sweep(pts)
    assert probe.edges == g.m
    assert probe.kappa == degeneracy(g).kappa


def test_run_sweep_thread_count_does_not_change_bytes():
    kwargs = dict(
        model="hrg",
        n_values=(64, 128),
        alpha_values=(0.6, 0.75),
        c_or_lambda=0.0,
        seeds=(0, 1),
        analyses=frozenset({"degeneracy", "colouring"}),
    )
    serial = records_to_csv_bytes(run_sweep(SweepConfig(**kwargs)))
    threaded = records_to_csv_bytes(
        run_sweep(SweepConfig(**kwargs, thread_count=4))
    )
    assert serial == threaded


def test_run_cell_other_models():
    cfg = SweepConfig(
        model="hrg-poisson",
        n_values=(128,),
        alpha_values=(0.7,),
        c_or_lambda=0.0,
        seeds=(3,),
    )
    rec = run_cell(cfg, 128, 0.7, 3)
    assert rec.error is None and rec.kappa is not None

    gcfg = SweepConfig(
        model="girg",
        n_values=(256,),
        alpha_values=(0.6,),
        c_or_lambda=1.0,
        seeds=(4,),
        analyses=frozenset({"degeneracy", "clique-extend"}),
    )
    grec = run_cell(gcfg, 256, 0.6, 4)
    assert grec.error is None
    # the torus clique witness is the certified core itself
    assert grec.omega_lb == grec.sigma


def test_run_cell_isolates_failures():
    cfg = SweepConfig(
        model="hrg",
        n_values=(1, 64),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        seeds=(0,),
        analyses=frozenset({"separator"}),
    )
    records = run_sweep(cfg)
    by_n = {r.n: r for r in records}
    assert by_n[1].error is not None
    assert by_n[1].kappa is None
    assert by_n[64].error is None


def test_run_cell_records_runtimes_when_asked():
    cfg = SweepConfig(
        model="hrg",
        n_values=(256,),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        seeds=(0,),
        record_runtimes=True,
    )
    rec = run_cell(cfg, 256, 0.75, 0)
    assert rec.runtime_ms_sample > 0.0
    assert rec.runtime_ms_build > 0.0
    assert rec.runtime_ms_analyze > 0.0


# ---------------------------------------------------------------------------
# CSV persistence


def test_csv_round_trip_is_field_exact(tmp_path):
    gen = np.random.default_rng(17)
    records = []
    for i in range(1000):
        model = ("hrg", "hrg-poisson", "girg")[i % 3]
        records.append(
            ExperimentRecord(
                model=model,
                n=int(gen.integers(1, 10**7)),
                alpha=float(gen.uniform(0.5, 1.0)),
                c_or_lambda=float(gen.normal()),
                seed=int(gen.integers(0, 2**63)),
                sigma=None if i % 7 == 0 else int(gen.integers(0, 100)),
                kappa=None if i % 5 == 0 else int(gen.integers(0, 1000)),
                max_inner_degree=None if i % 11 == 0 else int(gen.integers(0, 1000)),
                omega_lb=None if i % 3 == 0 else int(gen.integers(0, 100)),
                omega_exact=None,
                colours_greedy=int(gen.integers(0, 1000)),
                edges=int(gen.integers(0, 10**9)),
                runtime_ms_sample=float(gen.exponential()),
                runtime_ms_build=float(gen.exponential()),
                runtime_ms_analyze=float(gen.exponential()),
                kappa_lower_const=float(gen.uniform(1, 2)),
                kappa_upper_const=float(gen.uniform(1, 2)),
                clique_upper_const=float(gen.uniform(1, 2)),
                girg_ratio_const=float(gen.uniform(1, 2)),
                error=None
                if i % 4
                else 'ValueError: bad, "quoted", and\nmultiline',
            )
        )
    path = tmp_path / "records.csv"
    write_csv(records, path)
    back = read_csv(path)
    assert back == records
    assert records_to_csv_bytes(records) == path.read_bytes()


def test_csv_header_only_for_empty_records(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv([], path)
    assert path.read_bytes() == (FORMAT_TAG + "\n" + GOLDEN_HEADER + "\r\n").encode()
    assert read_csv(path) == []


def test_csv_schema_is_frozen(tmp_path):
    path = tmp_path / "one.csv"
    write_csv([_record()], path)
    lines = path.read_text().splitlines()
    assert lines[0] == FORMAT_TAG
    assert lines[1] == GOLDEN_HEADER


def test_read_csv_rejects_foreign_files(tmp_path):
    bad_tag = tmp_path / "tag.csv"
    bad_tag.write_text("model,n\nhrg,64\n")
    with pytest.raises(ValueError, match="format tag"):
        read_csv(bad_tag)

    bad_header = tmp_path / "header.csv"
    bad_header.write_text(FORMAT_TAG + "\nmodel,n\nhrg,64\n")
    with pytest.raises(ValueError, match="header"):
        read_csv(bad_header)

    short_row = tmp_path / "short.csv"
    short_row.write_text(FORMAT_TAG + "\n" + GOLDEN_HEADER + "\nhrg,64\n")
    with pytest.raises(ValueError, match="fields"):
        read_csv(short_row)

    with pytest.raises(OSError):
        read_csv(tmp_path / "does-not-exist.csv")


# ---------------------------------------------------------------------------
# record validation


def test_validate_records_accepts_consistent_rows():
    validate_records([_record(seed=s) for s in range(3)])


def test_validate_records_rejects_chain_violation():
    bad = _record(sigma=9, omega_lb=3)
    with pytest.raises(RuntimeError, match="clique-chain"):
        validate_records([bad])
    # a failed cell is exempt: its numeric columns are not evidence
    validate_records([dataclasses.replace(bad, error="RuntimeError: boom")])


def test_validate_records_rejects_theory_drift():
    drifted = dataclasses.replace(
        _record(), kappa_lower_const=_record().kappa_lower_const + 1e-6
    )
    with pytest.raises(RuntimeError, match="drift"):
        validate_records([drifted])


def test_validate_records_rejects_inconsistent_theory_columns():
    good = _record()
    other = dataclasses.replace(good, seed=2, kappa_upper_const=2.0)
    with pytest.raises(RuntimeError, match="disagree|drift"):
        validate_records([good, other])


# ---------------------------------------------------------------------------
# model comparison


def test_compare_models_identical_records_gap_zero():
    hrg = [_record(seed=s, kappa=10, sigma=5) for s in range(5)]
    gaps = compare_models(hrg, hrg)
    assert len(gaps) == 1
    assert gaps[0].gap == 0.0
    assert gaps[0].ci_low <= 0.0 <= gaps[0].ci_high


def test_compare_models_constant_shift():
    hrg = [_record(seed=s, kappa=10, sigma=10) for s in range(8)]
    girg = [_record(model="girg", seed=s, kappa=15, sigma=10) for s in range(8)]
    gaps = compare_models(hrg, girg)
    assert gaps[0].gap == pytest.approx(0.5)
    assert gaps[0].ci_low == pytest.approx(0.5)
    assert gaps[0].ci_high == pytest.approx(0.5)


def test_compare_models_grid_mismatch():
    hrg = [_record(seed=s) for s in range(3)]
    girg = [_record(model="girg", n=128, seed=s) for s in range(3)]
    with pytest.raises(ValueError, match="grids differ"):
        compare_models(hrg, girg)


def test_compare_models_needs_kappa_and_sigma():
    with pytest.raises(ValueError, match="kappa"):
        compare_models([_record(kappa=None)], [_record(model="girg")])
    with pytest.raises(ValueError, match="sigma"):
        compare_models([_record(sigma=0)], [_record(model="girg")])


# ---------------------------------------------------------------------------
# config files


def test_parse_config_round_trip(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text(
        "# demo sweep\n"
        "model = hrg\n"
        "n = 64, 128\n"
        "alpha = 0.6,0.75\n"
        "C = -2\n"
        "seeds = 0, 1, 2\n"
        "analyses = degeneracy, colouring\n"
        "threads = 2\n"
        "out = records.csv  # trailing comment\n"
        "record_runtimes = true\n"
    )
    cfg = parse_config(path)
    assert cfg.model == "hrg"
    assert cfg.n_values == (64, 128)
    assert cfg.alpha_values == (0.6, 0.75)
    assert cfg.c_or_lambda == -2.0
    assert cfg.seeds == (0, 1, 2)
    assert cfg.analyses == frozenset({"degeneracy", "colouring"})
    assert cfg.thread_count == 2
    assert cfg.out == "records.csv"
    assert cfg.record_runtimes is True


def test_parse_config_girg_and_defaults(tmp_path):
    path = tmp_path / "girg.cfg"
    path.write_text("model = girg\nn = 256\nalpha = 0.6\nlambda = 2.5\n")
    cfg = parse_config(path)
    assert cfg.model == "girg"
    assert cfg.c_or_lambda == 2.5
    assert cfg.base_seed == 0 and cfg.reps == 1
    assert cfg.analyses == frozenset({"degeneracy"})
    assert cfg.thread_count == 1
    assert cfg.record_runtimes is False


def test_parse_config_errors(tmp_path):
    def cfg_file(text):
        path = tmp_path / "bad.cfg"
        path.write_text(text)
        return path

    with pytest.raises(ValueError, match="missing required"):
        parse_config(cfg_file("model = hrg\nn = 64\n"))
    with pytest.raises(ValueError, match="unknown key"):
        parse_config(cfg_file("model = hrg\nn = 64\nalpha = 0.75\nfoo = 1\n"))
    with pytest.raises(ValueError, match="duplicate key"):
        parse_config(cfg_file("model = hrg\nmodel = girg\nn = 64\nalpha = 0.75\n"))
    with pytest.raises(ValueError, match="expected 'key = value'"):
        parse_config(cfg_file("model hrg\n"))
    with pytest.raises(ValueError, match="takes 'lambda'"):
        parse_config(cfg_file("model = girg\nn = 64\nalpha = 0.75\nC = 0\n"))
    with pytest.raises(ValueError, match="take 'C'"):
        parse_config(cfg_file("model = hrg\nn = 64\nalpha = 0.75\nlambda = 1\n"))
    with pytest.raises(ValueError, match="conflicts"):
        parse_config(
            cfg_file("model = hrg\nn = 64\nalpha = 0.75\nseeds = 1\nreps = 2\n")
        )
