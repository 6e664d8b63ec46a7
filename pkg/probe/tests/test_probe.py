"""Probe adapter tests.

The round-trip tests consume the analysis toolkit's declared file
interfaces: a manifest written by its template generator goes in, and the
emitted score table must parse through its datastore with zero errors.
The real-checkpoint test runs only when the public uncased model is
available locally; the stub scorer covers the adapter machinery otherwise.
"""

import io
from pathlib import Path

import pytest

from maskprobe.cli import main
from maskprobe.manifest import ManifestEntry, read_manifest
from maskprobe.profiles import default_profiles
from maskprobe.records import build_rows, write_rows
from maskprobe.scorer import ProbeError, StubScorer, resolve_pronoun_ids

maskbias_templates = pytest.importorskip(
    "maskbias.templates", reason="analysis toolkit not installed"
)
from maskbias.datastore import parse_score_table  # noqa: E402
from maskbias.templates import (  # noqa: E402
    Profession,
    ProfessionList,
    enumerate_probe_set,
    write_manifest,
)

PROFESSIONS = ProfessionList(
    items=tuple(
        Profession(n)
        for n in (
            "nurse", "doctor", "engineer", "teacher", "president",
            "officer", "artist", "umpire", "pilot",
        )
    )
)


def make_manifest(tmp_path: Path, model: str = "bert-base-uncased") -> Path:
    profile = default_profiles()[model]
    specs = enumerate_probe_set(PROFESSIONS, ("is",), profile.mask_token)
    path = tmp_path / f"templates_{model}.csv"
    write_manifest(specs, path)
    return path


def bert_checkpoint_available() -> bool:
    try:
        import torch  # noqa: F401
        from transformers import AutoTokenizer

        AutoTokenizer.from_pretrained("bert-base-uncased", local_files_only=True)
        return True
    except Exception:
        return False


class TestManifest:
    def test_reads_primary_manifest(self, tmp_path):
        entries = read_manifest(make_manifest(tmp_path))
        assert len(entries) == 10  # 9 professions + prior
        assert entries[-1].profession == "[MASK]"
        assert entries[-1].rendered == "[MASK] is a [MASK]."

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(ValueError, match="header"):
            read_manifest(path)


class TestStubScorer:
    def test_probabilities_in_range_and_stable(self):
        scorer = StubScorer()
        a = scorer.pronoun_probabilities("[MASK] is a nurse.", ("he", "she"))
        b = scorer.pronoun_probabilities("[MASK] is a nurse.", ("he", "she"))
        assert a == b
        assert all(0.0 < v < 1.0 for v in a)

    def test_distinct_templates_distinct_scores(self):
        scorer = StubScorer()
        a = scorer.pronoun_probabilities("[MASK] is a nurse.", ("he", "she"))
        b = scorer.pronoun_probabilities("[MASK] is a doctor.", ("he", "she"))
        assert a != b


class TestResolvePronounIds:
    class _Tok:
        unk_token_id = 0

        def __init__(self, vocab):
            self.vocab = vocab

        def convert_tokens_to_ids(self, token):
            return self.vocab.get(token, 0)

        def encode(self, text, add_special_tokens=False):
            return self.vocab_pieces.get(text, [0, 0]) if hasattr(self, "vocab_pieces") else [0, 0]

    def test_single_token_pronouns(self):
        tok = self._Tok({"he": 5, "she": 6})
        assert resolve_pronoun_ids(tok, ("he", "she")) == (5, 6)

    def test_multi_token_pronoun_is_recorded_error(self):
        tok = self._Tok({})
        with pytest.raises(ProbeError, match="not a single token"):
            resolve_pronoun_ids(tok, ("he", "she"))


class TestBuildRows:
    def test_two_rows_per_template(self):
        profile = default_profiles()["bert-base-uncased"]
        entries = [
            ManifestEntry("is", "nurse", "[MASK] is a nurse."),
            ManifestEntry("is", "[MASK]", "[MASK] is a [MASK]."),
        ]
        rows = build_rows(entries, StubScorer(), profile, seed=-1, checkpoint=None)
        assert len(rows) == 4
        assert [r[0] for r in rows] == ["he", "she", "he", "she"]

    def test_prior_full_sentence_keeps_second_mask(self):
        profile = default_profiles()["bert-base-uncased"]
        entries = [ManifestEntry("is", "[MASK]", "[MASK] is a [MASK].")]
        rows = build_rows(entries, StubScorer(), profile, seed=-1, checkpoint=None)
        assert rows[0][4] == "he is a [MASK]."

    def test_cased_profile_uses_cased_pronouns(self):
        profile = default_profiles()["roberta-base"]
        entries = [ManifestEntry("is", "nurse", "<mask> is a nurse.")]
        rows = build_rows(entries, StubScorer(), profile, seed=-1, checkpoint=None)
        assert [r[0] for r in rows] == ["He", "She"]
        assert rows[0][4] == "He is a nurse."

    def test_absent_checkpoint_needs_public_seed(self):
        profile = default_profiles()["bert-base-uncased"]
        with pytest.raises(ValueError, match="seed -1"):
            build_rows([], StubScorer(), profile, seed=2, checkpoint=None)


class TestCliRoundTrip:
    def run_cli(self, tmp_path, model="bert-base-uncased", extra=()):
        manifest = make_manifest(tmp_path, model)
        out = tmp_path / "scores.csv"
        code = main(
            [
                "--manifest", str(manifest), "--model", model,
                "--steps", "public", "--scorer", "stub", "--out", str(out),
                *extra,
            ]
        )
        assert code == 0
        return out

    def test_output_parses_through_datastore_with_zero_errors(self, tmp_path):
        out = self.run_cli(tmp_path)
        records = parse_score_table(out)
        assert len(records) == 2 * 10
        assert all(rec.seed == -1 and rec.checkpoint is None for rec in records)
        assert {rec.pronoun for rec in records} == {"he", "she"}

    def test_cased_model_round_trip(self, tmp_path):
        out = self.run_cli(tmp_path, model="roberta-base")
        records = parse_score_table(out)
        assert {rec.pronoun for rec in records} == {"He", "She"}
        prior = [rec for rec in records if rec.profession == "<mask>"]
        assert len(prior) == 2

    def test_run_to_run_identical_bytes(self, tmp_path):
        first = self.run_cli(tmp_path / "a")
        second = self.run_cli(tmp_path / "b")
        assert first.read_bytes() == second.read_bytes()

    def test_step_runs_append_checkpoints(self, tmp_path):
        manifest = make_manifest(tmp_path)
        out = tmp_path / "steps.csv"
        code = main(
            [
                "--manifest", str(manifest), "--model", "bert-base-uncased",
                "--seed", "1", "--steps", "100,200", "--scorer", "stub",
                "--out", str(out),
            ]
        )
        assert code == 0
        records = parse_score_table(out)
        assert {rec.checkpoint for rec in records} == {100, 200}
        assert all(rec.seed == 1 for rec in records)

    def test_wrong_mask_manifest_rejected(self, tmp_path):
        manifest = make_manifest(tmp_path, "roberta-base")
        code = main(
            [
                "--manifest", str(manifest), "--model", "bert-base-uncased",
                "--steps", "public", "--scorer", "stub",
                "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2


@pytest.mark.skipif(
    not bert_checkpoint_available(),
    reason="bert-base-uncased weights not available locally",
)
class TestPublicCheckpoint:
    """Secondary acceptance: 10 templates against the public uncased checkpoint."""

    def test_real_scores_round_trip_and_repeat(self, tmp_path):
        manifest = make_manifest(tmp_path)
        outputs = []
        for run in ("a", "b"):
            out = tmp_path / f"scores_{run}.csv"
            code = main(
                [
                    "--manifest", str(manifest), "--model", "bert-base-uncased",
                    "--steps", "public", "--scorer", "hf", "--local-files-only",
                    "--out", str(out),
                ]
            )
            assert code == 0
            outputs.append(out)
        records = parse_score_table(outputs[0])
        assert len(records) == 2 * 10
        assert {rec.pronoun for rec in records} == {"he", "she"}
        assert outputs[0].read_bytes() == outputs[1].read_bytes()
