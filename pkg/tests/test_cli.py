import os
from pathlib import Path

import pytest

from fcagen import (
    contranominal_scale,
    degree_distribution,
    read_burmeister,
    write_burmeister,
)
from fcagen.cli import main


def run(*argv):
    return main([str(a) for a in argv])


def read_dir(path):
    return {p.name: p.read_bytes() for p in sorted(Path(path).iterdir())}


class TestGenerate:
    def test_single_context_roundtrips(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert run("generate", "--count", 1, "--model", "direct",
                   "--attributes", 6, "--seed", 42, "--out", out) == 0
        ctx = read_burmeister((out / "ctx_0.cxt").read_text())
        assert ctx.n_attributes == 6
        manifest = (out / "manifest.txt").read_text()
        assert "seed=42" in manifest
        assert "model=direct" in manifest
        assert "context_seed_0=" in manifest
        assert "seed=42" in capsys.readouterr().out

    def test_repeat_run_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["generate", "--count", 8, "--model", "dirichlet",
                "--attributes", 5, "--seed", 7]
        assert run(*args, "--out", a) == 0
        assert run(*args, "--out", b) == 0
        assert read_dir(a) == read_dir(b)

    def test_jobs_do_not_change_outputs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["generate", "--count", 10, "--model", "varB",
                "--attributes", 5, "--seed", 11]
        assert run(*args, "--jobs", 1, "--out", a) == 0
        assert run(*args, "--jobs", 2, "--out", b) == 0
        assert read_dir(a) == read_dir(b)

    def test_zero_count_is_usage_error(self, tmp_path):
        assert run("generate", "--count", 0, "--model", "direct",
                   "--attributes", 5, "--out", tmp_path / "x") == 1

    def test_unknown_model_is_usage_error(self, tmp_path):
        assert run("generate", "--count", 1, "--model", "bogus",
                   "--attributes", 5, "--out", tmp_path / "x") == 1

    def test_seed_generated_and_printed_when_absent(self, tmp_path, capsys):
        assert run("generate", "--count", 1, "--model", "direct",
                   "--attributes", 4, "--out", tmp_path / "x") == 0
        out = capsys.readouterr().out
        assert any(line.startswith("seed=") for line in out.splitlines())


class TestIpi:
    def test_contranominal_row(self, tmp_path):
        indir = tmp_path / "in"
        indir.mkdir()
        (indir / "ctx_0.cxt").write_text(write_burmeister(contranominal_scale(10)))
        out = tmp_path / "ipi.csv"
        assert run("ipi", "--in", indir, "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "index,intents,pseudo_intents,contranominal,objects"
        assert lines[1] == "0,1024,0,true,10"

    def test_empty_directory_gives_header_only(self, tmp_path):
        indir = tmp_path / "in"
        indir.mkdir()
        out = tmp_path / "ipi.csv"
        assert run("ipi", "--in", indir, "--out", out) == 0
        assert out.read_text() == "index,intents,pseudo_intents,contranominal,objects\n"

    def test_generator_input_row_count(self, tmp_path):
        out = tmp_path / "ipi.csv"
        assert run("ipi", "--model", "indirect", "--attributes", 5,
                   "--count", 25, "--seed", 3, "--out", out) == 0
        assert len(out.read_text().splitlines()) == 26

    def test_files_ordered_by_index(self, tmp_path):
        indir = tmp_path / "in"
        indir.mkdir()
        for i, n in enumerate([3, 4, 5, 6, 7, 8, 9, 10, 11, 12]):
            (indir / f"ctx_{i}.cxt").write_text(write_burmeister(contranominal_scale(n)))
        out = tmp_path / "ipi.csv"
        assert run("ipi", "--in", indir, "--out", out) == 0
        objects = [int(line.split(",")[4]) for line in out.read_text().splitlines()[1:]]
        assert objects == [3, 4, 5, 6, 7, 8, 9, 10, 11, 12]

    def test_missing_input_dir_is_io_error(self, tmp_path):
        assert run("ipi", "--in", tmp_path / "nope", "--out", tmp_path / "x.csv") == 2

    def test_missing_options_is_usage_error(self, tmp_path):
        assert run("ipi", "--out", tmp_path / "x.csv") == 1


class TestExperimentStego:
    def test_outputs_and_summary(self, tmp_path, capsys):
        out = tmp_path / "stego"
        assert run("experiment", "stego", "--model", "indirect", "--attributes", 5,
                   "--count", 40, "--seed", 21, "--out", out) == 0
        ipi_lines = (out / "ipi.csv").read_text().splitlines()
        assert len(ipi_lines) == 41
        hist_lines = (out / "pseudo_intent_histogram.csv").read_text().splitlines()
        assert hist_lines[0] == "pseudo_intents,count"
        assert all(int(line.split(",")[0]) > 0 for line in hist_lines[1:])
        summary = (out / "summary.txt").read_text()
        assert summary.startswith("contranominal_count=")
        count = int(summary.strip().split("=")[1])
        flags = [line.split(",")[3] for line in ipi_lines[1:]]
        assert count == flags.count("true")

    def test_keep_zero_bin(self, tmp_path):
        out = tmp_path / "stego"
        assert run("experiment", "stego", "--model", "direct", "--attributes", 4,
                   "--count", 30, "--seed", 5, "--keep-zero", "--out", out) == 0
        hist_lines = (out / "pseudo_intent_histogram.csv").read_text().splitlines()[1:]
        assert sum(int(line.split(",")[1]) for line in hist_lines) == 30


class TestExperimentDistinct:
    def test_three_models_monotone_curves(self, tmp_path):
        out = tmp_path / "distinct"
        assert run("experiment", "distinct", "--attributes", 4, "--count", 200,
                   "--models", "direct,varA,varB", "--seed", 9, "--out", out) == 0
        for model in ("direct", "varA", "varB"):
            lines = (out / f"distinct_{model}.csv").read_text().splitlines()
            assert lines[0] == "checkpoint,distinct"
            totals = [int(line.split(",")[1]) for line in lines[1:]]
            assert totals == sorted(totals)

    def test_explicit_checkpoints(self, tmp_path):
        out = tmp_path / "distinct"
        assert run("experiment", "distinct", "--attributes", 4, "--count", 50,
                   "--models", "direct", "--checkpoints", "10,50",
                   "--seed", 2, "--out", out) == 0
        lines = (out / "distinct_direct.csv").read_text().splitlines()
        assert [line.split(",")[0] for line in lines[1:]] == ["10", "50"]


class TestNullmodel:
    @pytest.fixture
    def reference(self, tmp_path):
        from fcagen import GeneratorSpec, generate

        path = tmp_path / "ref.cxt"
        ctx = generate(GeneratorSpec("indirect", 6, object_count=30, seed=12))
        path.write_text(write_burmeister(ctx))
        return path

    def test_permute_preserves_degree_histogram(self, tmp_path, reference):
        out = tmp_path / "null"
        assert run("nullmodel", "--reference", reference, "--method", "permute",
                   "--count", 5, "--seed", 3, "--out", out) == 0
        ref = read_burmeister(reference.read_text())
        for i in range(5):
            null_ctx = read_burmeister((out / f"null_{i}.cxt").read_text())
            assert degree_distribution(null_ctx) == degree_distribution(ref)

    def test_dirichlet_default_beta_recorded(self, tmp_path, reference):
        out = tmp_path / "null"
        assert run("nullmodel", "--reference", reference, "--method", "dirichlet",
                   "--count", 2, "--seed", 4, "--out", out) == 0
        manifest = (out / "manifest.txt").read_text()
        assert "beta=7000.0" in manifest  # 1000 * (|M|+1) with |M|=6
        csv_lines = (out / "degree_comparison.csv").read_text().splitlines()
        assert csv_lines[0] == "degree,reference,mean_output"
        assert len(csv_lines) == 8

    def test_zero_count_rejected(self, tmp_path, reference):
        assert run("nullmodel", "--reference", reference, "--method", "permute",
                   "--count", 0, "--out", tmp_path / "x") == 1

    def test_missing_reference_is_io_error(self, tmp_path):
        assert run("nullmodel", "--reference", tmp_path / "nope.cxt",
                   "--method", "permute", "--count", 1,
                   "--out", tmp_path / "x") == 2

    def test_empty_reference_rejected(self, tmp_path):
        path = tmp_path / "empty.cxt"
        path.write_text("B\n\n0\n3\n\nm0\nm1\nm2\n")
        assert run("nullmodel", "--reference", path, "--method", "categorical",
                   "--count", 1, "--out", tmp_path / "x") == 1


class TestLineEndings:
    def test_outputs_are_lf_terminated(self, tmp_path):
        out = tmp_path / "run"
        assert run("generate", "--count", 1, "--model", "direct",
                   "--attributes", 4, "--seed", 1, "--out", out) == 0
        for name in ("ctx_0.cxt", "manifest.txt"):
            data = (out / name).read_bytes()
            assert b"\r" not in data
            assert data.endswith(b"\n")
