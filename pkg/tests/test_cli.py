"""End-to-end tests for the command-line interface."""

import shutil
import subprocess

import pytest

from hrglab.cli import main
from hrglab.experiments import (
    FORMAT_TAG,
    SweepConfig,
    read_csv,
    run_cell,
    write_csv,
)
from hrglab.graphs import read_edge_list


def _gen(tmp_path, *extra):
    edges = tmp_path / "graph.edges"
    code = main(
        [
            "gen",
            "--model",
            "hrg",
            "--n",
            "200",
            "--alpha",
            "0.75",
            "--C",
            "0",
            "--seed",
            "3",
            "--edges-out",
            str(edges),
            *extra,
        ]
    )
    assert code == 0
    return edges


def test_gen_writes_edges_and_coords_sidecar(tmp_path, capsys):
    edges = _gen(tmp_path)
    assert edges.exists()
    assert (tmp_path / "graph.edges.coords").exists()
    g = read_edge_list(edges)
    assert g.n == 200
    assert "200 vertices" in capsys.readouterr().out


def test_analyze_record_matches_direct_run(tmp_path):
    edges = _gen(tmp_path)
    out = tmp_path / "record.csv"
    code = main(
        [
            "analyze",
            "--model",
            "hrg",
            "--alpha",
            "0.75",
            "--C",
            "0",
            "--n",
            "200",
            "--seed",
            "3",
            "--edges-out",
            str(edges),
            "--analyses",
            "degeneracy,colouring,inner-degrees,clique-extend",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    (record,) = read_csv(out)

    cfg = SweepConfig(
        model="hrg",
        n_values=(200,),
        alpha_values=(0.75,),
        c_or_lambda=0.0,
        seeds=(3,),
        analyses=frozenset(
            {"degeneracy", "colouring", "inner-degrees", "clique-extend"}
        ),
    )
    assert record == run_cell(cfg, 200, 0.75, 3)


def test_analyze_girg_round_trip(tmp_path):
    edges = tmp_path / "torus.edges"
    assert (
        main(
            [
                "gen",
                "--model",
                "girg",
                "--n",
                "256",
                "--alpha",
                "0.6",
                "--lambda",
                "1.5",
                "--seed",
                "7",
                "--edges-out",
                str(edges),
            ]
        )
        == 0
    )
    out = tmp_path / "record.csv"
    code = main(
        [
            "analyze",
            "--model",
            "girg",
            "--alpha",
            "0.6",
            "--lambda",
            "1.5",
            "--n",
            "256",
            "--seed",
            "7",
            "--edges-out",
            str(edges),
            "--analyses",
            "degeneracy,clique-extend",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    (record,) = read_csv(out)
    cfg = SweepConfig(
        model="girg",
        n_values=(256,),
        alpha_values=(0.6,),
        c_or_lambda=1.5,
        seeds=(7,),
        analyses=frozenset({"degeneracy", "clique-extend"}),
    )
    assert record == run_cell(cfg, 256, 0.6, 7)


def test_analyze_writes_stdout_when_no_out(tmp_path, capsys):
    edges = _gen(tmp_path)
    capsys.readouterr()
    code = main(
        [
            "analyze",
            "--model",
            "hrg",
            "--alpha",
            "0.75",
            "--C",
            "0",
            "--seed",
            "3",
            "--edges-out",
            str(edges),
        ]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == FORMAT_TAG
    assert len(lines) == 3


def test_model_flag_mismatch_is_usage_error(tmp_path):
    edges = tmp_path / "x.edges"
    args = ["--n", "64", "--seed", "0", "--edges-out", str(edges)]
    assert main(["gen", "--model", "girg", "--alpha", "0.6", "--C", "0", *args]) == 2
    assert (
        main(["gen", "--model", "hrg", "--alpha", "0.6", "--lambda", "1", *args]) == 2
    )


def test_analyze_rejects_unknown_analysis_and_short_coords(tmp_path):
    edges = _gen(tmp_path)
    base = [
        "analyze",
        "--model",
        "hrg",
        "--alpha",
        "0.75",
        "--C",
        "0",
        "--edges-out",
        str(edges),
    ]
    assert main([*base, "--analyses", "pagerank"]) == 2

    coords = tmp_path / "graph.edges.coords"
    lines = coords.read_text().splitlines(keepends=True)
    coords.write_text("".join(lines[:-1]))
    assert main(base) == 2


def _sweep_config(tmp_path, out_line=True):
    cfg = tmp_path / "sweep.cfg"
    text = (
        "model = hrg\n"
        "n = 64, 128\n"
        "alpha = 0.6, 0.75\n"
        "C = 0\n"
        "seeds = 0, 1\n"
        "analyses = degeneracy, colouring\n"
    )
    if out_line:
        text += f"out = {tmp_path / 'records.csv'}\n"
    cfg.write_text(text)
    return cfg


def test_sweep_runs_config_into_csv(tmp_path, capsys):
    cfg = _sweep_config(tmp_path)
    assert main(["sweep", str(cfg)]) == 0
    records = read_csv(tmp_path / "records.csv")
    assert len(records) == 8
    assert all(r.error is None for r in records)
    assert "wrote 8 records" in capsys.readouterr().out

    override = tmp_path / "other.csv"
    assert main(["sweep", str(cfg), "--out", str(override), "--threads", "3"]) == 0
    assert override.read_bytes() == (tmp_path / "records.csv").read_bytes()


def test_sweep_without_output_path_fails(tmp_path):
    cfg = _sweep_config(tmp_path, out_line=False)
    assert main(["sweep", str(cfg)]) == 2


def test_validate_round_trip_and_failures(tmp_path):
    cfg = _sweep_config(tmp_path)
    assert main(["sweep", str(cfg)]) == 0
    csv_path = tmp_path / "records.csv"
    assert main(["validate", str(csv_path)]) == 0

    records = read_csv(csv_path)
    import dataclasses

    bad = dataclasses.replace(records[0], sigma=10**6)
    write_csv([bad] + records[1:], csv_path)
    assert main(["validate", str(csv_path)]) == 1

    foreign = tmp_path / "foreign.csv"
    foreign.write_text("model,n\nhrg,64\n")
    assert main(["validate", str(foreign)]) == 2
    assert main(["validate", str(tmp_path / "missing.csv")]) == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit):
        main([])


def test_console_script_is_installed(tmp_path):
    exe = shutil.which("hrglab")
    assert exe is not None
    edges = tmp_path / "cli.edges"
    proc = subprocess.run(
        [
            exe,
            "gen",
            "--model",
            "hrg",
            "--n",
            "64",
            "--alpha",
            "0.75",
            "--C",
            "0",
            "--seed",
            "0",
            "--edges-out",
            str(edges),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert edges.exists() and (tmp_path / "cli.edges.coords").exists()
