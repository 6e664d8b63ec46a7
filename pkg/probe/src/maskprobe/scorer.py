"""Pronoun-probability scorers.

The HuggingFace scorer fills the first mask position of each template and
reads the softmax mass of the two pronoun tokens, raw (not renormalized
over the pair). The stub scorer produces deterministic pseudo-probabilities
from a hash and exists so the pipeline can be exercised without model
weights.
"""

import hashlib
import logging

logger = logging.getLogger(__name__)


class ProbeError(RuntimeError):
    pass


class StubScorer:
    """Deterministic stand-in: probabilities derived from sha256, in (0.05, 0.45)."""

    def __init__(self, salt: str = "maskprobe"):
        self.salt = salt
        self.lossy_templates: list[str] = []

    def _unit(self, *parts: str) -> float:
        digest = hashlib.sha256("|".join(parts).encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "big") / 2**64

    def pronoun_probabilities(self, rendered: str, pronouns) -> tuple[float, float]:
        he, she = pronouns
        return (
            0.05 + 0.4 * self._unit(self.salt, rendered, he),
            0.05 + 0.4 * self._unit(self.salt, rendered, she),
        )


def resolve_pronoun_ids(tokenizer, pronouns) -> tuple[int, int]:
    """Vocabulary ids of the two pronoun surface forms.

    Models whose tokenizer splits a pronoun into several pieces cannot be
    probed with this scheme; that is an error, not a guess.
    """
    ids = []
    unk = getattr(tokenizer, "unk_token_id", None)
    for pronoun in pronouns:
        token_id = tokenizer.convert_tokens_to_ids(pronoun)
        if token_id is None or token_id == unk:
            pieces = tokenizer.encode(pronoun, add_special_tokens=False)
            if len(pieces) != 1:
                raise ProbeError(
                    f"pronoun {pronoun!r} is not a single token for this model; "
                    "recording and skipping"
                )
            token_id = pieces[0]
        ids.append(token_id)
    return tuple(ids)


class HuggingFaceScorer:
    """Scores templates with a masked-LM checkpoint, deterministic inference."""

    def __init__(self, model_path: str, device: str = "cpu", local_files_only: bool = False):
        try:
            import torch
            from transformers import AutoModelForMaskedLM, AutoTokenizer
        except ImportError as exc:
            raise ProbeError(f"transformers/torch not installed: {exc}") from exc

        self._torch = torch
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(
                model_path, local_files_only=local_files_only
            )
            self.model = AutoModelForMaskedLM.from_pretrained(
                model_path, local_files_only=local_files_only
            )
        except Exception as exc:
            raise ProbeError(f"cannot load checkpoint {model_path!r}: {exc}") from exc
        self.model.eval()
        self.model.to(device)
        self.device = device
        self.lossy_templates: list[str] = []
        if self.tokenizer.mask_token_id is None:
            raise ProbeError(f"{model_path!r} has no mask token; not a masked LM")

    def pronoun_probabilities(self, rendered: str, pronouns) -> tuple[float, float]:
        torch = self._torch
        he_id, she_id = resolve_pronoun_ids(self.tokenizer, pronouns)
        encoded = self.tokenizer(rendered, return_tensors="pt").to(self.device)
        mask_positions = (
            encoded["input_ids"][0] == self.tokenizer.mask_token_id
        ).nonzero(as_tuple=True)[0]
        if len(mask_positions) == 0:
            raise ProbeError(f"no mask token found after tokenizing {rendered!r}")
        expected_masks = rendered.count(self.tokenizer.mask_token)
        if len(mask_positions) != expected_masks:
            logger.warning("tokenizer changed the mask count of %r", rendered)
            self.lossy_templates.append(rendered)
        first = int(mask_positions[0])  # only the first mask is predicted
        with torch.no_grad():
            logits = self.model(**encoded).logits[0, first]
            probs = torch.softmax(logits, dim=-1)
        return float(probs[he_id]), float(probs[she_id])
