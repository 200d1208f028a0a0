import shutil
import subprocess
import sys

import numpy as np
import pytest

from qw_figures.overlay import (
    OverlaySpec,
    SchemaError,
    load_density_csv,
    load_simulation_csv,
    main,
    render_overlay,
)

SIM_HEADER = "x,x_over_t,prob,t_prob,binned_density"
DENSITY_HEADER = "x,w,f_k,density"


def _write_sim(path, n=11, t=10):
    lines = [SIM_HEADER]
    for x in range(-t, t + 1, 2):
        p = 1.0 / n
        lines.append(f"{x},{x / t},{p},{t * p},{p / 0.2}")
    path.write_text("\n".join(lines) + "\n")


def _write_density(path, n=51):
    lines = [DENSITY_HEADER]
    for x in np.linspace(-0.7, 0.7, n):
        w = 1.0 - x
        fk = 1.0 / (1.0 + x * x)
        lines.append(f"{x},{w},{fk},{w * fk}")
    path.write_text("\n".join(lines) + "\n")


def test_load_simulation_csv(tmp_path):
    sim = tmp_path / "sim.csv"
    _write_sim(sim)
    data = load_simulation_csv(sim)
    assert data.shape == (11, 5)
    assert data[0, 0] == -10.0


def test_load_density_csv(tmp_path):
    den = tmp_path / "density.csv"
    _write_density(den)
    data = load_density_csv(den)
    assert data.shape == (51, 4)


def test_load_rejects_wrong_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,prob\n0,1\n")
    with pytest.raises(SchemaError):
        load_simulation_csv(bad)


def test_load_rejects_empty_file(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SchemaError):
        load_simulation_csv(empty)


def test_load_rejects_header_only(tmp_path):
    f = tmp_path / "h.csv"
    f.write_text(SIM_HEADER + "\n")
    with pytest.raises(SchemaError):
        load_simulation_csv(f)


def test_load_rejects_non_numeric(tmp_path):
    f = tmp_path / "n.csv"
    f.write_text(SIM_HEADER + "\n1,2,3,4,oops\n")
    with pytest.raises(SchemaError):
        load_simulation_csv(f)


def test_render_overlay_writes_vector_image(tmp_path):
    sim = tmp_path / "sim.csv"
    den = tmp_path / "density.csv"
    _write_sim(sim)
    _write_density(den)
    out = tmp_path / "overlay.svg"
    spec = OverlaySpec(sim_path=sim, density_path=den, out_path=out, title="t = 10")
    assert render_overlay(spec) == out
    body = out.read_text()
    assert out.stat().st_size > 0
    assert "<svg" in body


def test_main_defaults_to_svg(tmp_path):
    sim = tmp_path / "sim.csv"
    den = tmp_path / "density.csv"
    _write_sim(sim)
    _write_density(den)
    out = tmp_path / "figure"
    assert main(["--sim", str(sim), "--density", str(den), "--out", str(out)]) == 0
    assert (tmp_path / "figure.svg").exists()


def test_main_rejects_schema_mismatch(tmp_path):
    sim = tmp_path / "sim.csv"
    sim.write_text("wrong\n1\n")
    den = tmp_path / "density.csv"
    _write_density(den)
    out = tmp_path / "o.svg"
    assert main(["--sim", str(sim), "--density", str(den), "--out", str(out)]) == 2
    assert not out.exists()


def test_main_rejects_missing_file(tmp_path):
    den = tmp_path / "density.csv"
    _write_density(den)
    rc = main(["--sim", str(tmp_path / "nope.csv"), "--density", str(den),
               "--out", str(tmp_path / "o.svg")])
    assert rc == 2


@pytest.mark.skipif(shutil.which("qw") is None, reason="walk CLI not installed")
def test_end_to_end_against_cli(tmp_path):
    """Full pipeline: CLI CSVs in, one overlay image out."""
    sim = tmp_path / "sim.csv"
    den = tmp_path / "density.csv"
    subprocess.run(["qw", "simulate", "--t", "100", "--out", str(sim)], check=True)
    subprocess.run(["qw", "density", "--grid-points", "201", "--out", str(den)],
                   check=True)
    out = tmp_path / "overlay.svg"
    proc = subprocess.run(
        [sys.executable, "-m", "qw_figures.overlay",
         "--sim", str(sim), "--density", str(den),
         "--out", str(out), "--t-label", "(t = 100)"],
    )
    assert proc.returncode == 0
    assert out.exists() and out.stat().st_size > 0
