"""Model profiles, shared file format with the analysis toolkit.

The profile file maps a model name to its mask token spelling and the cased
or uncased pronoun pair; probe output must use exactly these spellings.
"""

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib


@dataclass(frozen=True)
class Profile:
    name: str
    mask_token: str
    pronouns: tuple[str, str]  # (he-form, she-form)
    seeds: tuple[int, ...] = ()


def load_profiles(path) -> dict[str, Profile]:
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    profiles = {}
    for name, table in doc.get("models", {}).items():
        pronouns = tuple(table["pronouns"])
        if len(pronouns) != 2:
            raise ValueError(f"model {name!r}: pronouns must be a pair")
        profiles[name] = Profile(
            name=name,
            mask_token=table["mask_token"],
            pronouns=pronouns,
            seeds=tuple(table.get("seeds", ())),
        )
    if not profiles:
        raise ValueError(f"{path}: no [models.*] sections")
    return profiles


def default_profiles() -> dict[str, Profile]:
    path = resources.files("maskprobe").joinpath("data/model_profiles.toml")
    return load_profiles(Path(str(path)))
