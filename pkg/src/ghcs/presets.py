"""
ghcs.presets
============

Preset registry: named coherent-state families with their thermal spectrum
and, where one is registered, the weight that resolves the identity.

File format (JSON): a mapping name → record

    {
      "pho-kp": {"kind": "KP", "p": 0, "q": 1, "a": [], "b": [2.0],
                 "spectrum": {"variant": "linear", "e0": 2.0},
                 "weight": {"name": "pho-kp", "k": 1.0}}
    }

Records are validated with pydantic; every record must build a valid family.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ghcs.auditors.unity import WeightPreset
from ghcs.core.errors import InvalidParameters, UnknownPreset
from ghcs.series.pfq import HypergeometricParams, Kind
from ghcs.states.families import (
    CSFamily,
    harmonic_oscillator,
    pho_bg,
    pho_gk,
    pho_kp,
    quadratic,
)
from ghcs.states.spectra import spectrum_from_dict

logger = logging.getLogger("ghcs.presets")

BUILTIN_NAMES = ("ho", "ho-e0", "pho-bg", "pho-kp", "pho-gk", "quadratic")
DEFAULT_K = 1.0
DEFAULT_E0 = 0.5
DEFAULT_B = 1.0


class SpectrumRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    variant: Literal["linear", "quadratic", "gk"]
    e0: Optional[float] = None
    k: Optional[float] = None
    scale: Optional[float] = None
    b: Optional[float] = None


class WeightRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: Literal["ho", "pho-bg", "pho-kp"]
    k: float = 0.0


class PresetRecord(BaseModel):
    """One registry entry; ``name`` is filled from the mapping key."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    kind: Kind
    p: int
    q: int
    a: List[float] = []
    b: List[float] = []
    spectrum: SpectrumRecord
    weight: Optional[WeightRecord] = None

    @model_validator(mode="after")
    def _builds_family(self) -> "PresetRecord":
        self.to_family()
        self.to_weight()
        return self

    def to_family(self) -> CSFamily:
        params = HypergeometricParams(self.p, self.q, tuple(self.a), tuple(self.b))
        spectrum = spectrum_from_dict(self.spectrum.model_dump(exclude_none=True))
        return CSFamily(self.kind, params, spectrum, self.name)

    def to_weight(self) -> Optional[WeightPreset]:
        if self.weight is None:
            return None
        return WeightPreset(self.weight.name, self.weight.k)

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", exclude={"name"}, exclude_none=True)

    @classmethod
    def from_family(cls, family: CSFamily, weight: Optional[WeightPreset] = None) -> "PresetRecord":
        spectrum = family.spectrum.to_dict()
        return cls(
            name=family.name,
            kind=family.kind,
            p=family.params.p,
            q=family.params.q,
            a=list(family.params.a),
            b=list(family.params.b),
            spectrum=SpectrumRecord(**spectrum),
            weight=WeightRecord(name=weight.name, k=weight.k) if weight else None,
        )


class PresetRegistry:
    """Name → PresetRecord lookup with unique names."""

    def __init__(self, records: Iterable[PresetRecord]):
        self._records: Dict[str, PresetRecord] = {}
        for record in records:
            if record.name in self._records:
                raise InvalidParameters(f"duplicate preset name '{record.name}'")
            self._records[record.name] = record

    def names(self) -> List[str]:
        return list(self._records)

    def __contains__(self, name: str) -> bool:
        return name in self._records

    def __iter__(self):
        return iter(self._records.values())

    def get(self, name: str) -> PresetRecord:
        try:
            return self._records[name]
        except KeyError:
            raise UnknownPreset(name, self.names()) from None

    def family(self, name: str) -> CSFamily:
        return self.get(name).to_family()

    def weight(self, name: str) -> Optional[WeightPreset]:
        return self.get(name).to_weight()

    def to_json(self) -> str:
        payload = {name: record.to_json_dict() for name, record in self._records.items()}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def builtin_registry(
    k: float = DEFAULT_K, e0: float = DEFAULT_E0, b: float = DEFAULT_B
) -> PresetRegistry:
    """The oscillator presets; ``k``, ``e0`` and ``b`` parameterize them."""
    records = [
        PresetRecord.from_family(harmonic_oscillator(0.0), WeightPreset("ho")),
        PresetRecord.from_family(harmonic_oscillator(e0)),
        PresetRecord.from_family(pho_bg(k), WeightPreset("pho-bg", k)),
        PresetRecord.from_family(pho_kp(k), WeightPreset("pho-kp", k) if k > 0.5 else None),
        PresetRecord.from_family(pho_gk(k)),
        PresetRecord.from_family(quadratic(b)),
    ]
    return PresetRegistry(records)


def parse_registry(text: str, source: str = "<string>") -> PresetRegistry:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameters(f"{source}: not valid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise InvalidParameters(f"{source}: expected a mapping of preset name to record")
    records = []
    for name, body in raw.items():
        if not isinstance(body, dict):
            raise InvalidParameters(f"{source}: preset '{name}' is not an object")
        try:
            records.append(PresetRecord(name=name, **body))
        except ValidationError as exc:
            raise InvalidParameters(f"{source}: preset '{name}': {exc}") from None
        except TypeError as exc:
            raise InvalidParameters(f"{source}: preset '{name}': {exc}") from None
    logger.debug("loaded %d presets from %s", len(records), source)
    return PresetRegistry(records)


def load_registry(path: Path) -> PresetRegistry:
    """Read and validate a registry file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameters(f"cannot read preset file {path}: {exc.strerror}") from None
    return parse_registry(text, str(path))


def dump_registry(registry: PresetRegistry, path: Path) -> None:
    Path(path).write_text(registry.to_json(), encoding="utf-8")
