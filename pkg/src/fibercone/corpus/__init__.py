"""Built-in scenario corpus shipped with the package."""
from __future__ import annotations

from importlib import resources


def names() -> list:
    return sorted(p.name[:-3] for p in resources.files(__name__).iterdir()
                  if p.name.endswith(".fc"))


def text(name: str) -> str:
    if name not in names():
        raise KeyError(f"no corpus scenario named {name!r}")
    return resources.files(__name__).joinpath(name + ".fc").read_text()
