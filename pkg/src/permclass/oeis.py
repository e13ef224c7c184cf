"""OEIS sequence records: b-file parsing, bundled fixtures, remote fetch.

Fixtures for A165540 (the Av(1234,2341) counts) and A165539 (the
Av(1243,2314) counts) are bundled so the default workflow never touches
the network; the remote path is opt-in and falls back to the fixture
with a warning when the fetch fails.
"""

from __future__ import annotations

import os
import urllib.error
import urllib.request
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

FIXTURE_ENV = "PERMCLASS_FIXTURES"
FIXTURE_IDS = ("A165540", "A165539")
OEIS_URL = "https://oeis.org/{id}/b{digits}.txt"


class OeisError(RuntimeError):
    """The requested sequence data could not be obtained or parsed."""


@dataclass(frozen=True)
class SequenceRecord:
    """A named integer sequence with provenance.

    terms are (index, value) pairs with indices contiguous and ascending
    from 1; provenance records where the numbers came from (series,
    brute, closed-form, oeis-fixture or oeis-remote).
    """

    id: str
    terms: tuple
    provenance: str

    def __post_init__(self):
        terms = tuple((int(i), int(v)) for i, v in self.terms)
        for k, (i, _) in enumerate(terms, start=1):
            if i != k:
                raise OeisError(f"{self.id}: indices must run 1,2,...; found {i} at row {k}")
        object.__setattr__(self, "terms", terms)

    def values(self) -> list[int]:
        return [v for _, v in self.terms]

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "id": self.id,
            "provenance": self.provenance,
            "terms": [[i, str(v)] for i, v in self.terms],
        }


def parse_b_file(text: str, id: str, provenance: str) -> SequenceRecord:
    """Parse OEIS b-file lines: "index value", '#' comments skipped."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise OeisError(f"{id}: malformed b-file line {lineno}: {raw!r}")
        try:
            terms.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise OeisError(f"{id}: non-integer b-file line {lineno}: {raw!r}") from None
    return SequenceRecord(id=id, terms=tuple(terms), provenance=provenance)


def format_b_file(record: SequenceRecord) -> str:
    return "".join(f"{i} {v}\n" for i, v in record.terms)


def fixture_directory() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("permclass").joinpath("fixtures")))


def _fixture_record(id: str, directory: Path | None = None) -> SequenceRecord:
    directory = fixture_directory() if directory is None else directory
    path = directory / f"b{id[1:]}.txt"
    if not path.exists():
        raise OeisError(f"no bundled fixture for {id} (looked in {directory})")
    return parse_b_file(path.read_text(), id, "oeis-fixture")


def _remote_record(id: str, timeout: float) -> SequenceRecord:
    url = OEIS_URL.format(id=id, digits=id[1:])
    with urllib.request.urlopen(url, timeout=timeout) as response:
        text = response.read().decode("utf-8")
    return parse_b_file(text, id, "oeis-remote")


def oeis_fetch(id: str, terms: int, offline: bool = True, timeout: float = 10.0,
               directory: Path | None = None) -> SequenceRecord:
    """Fetch a sequence, trimmed to the first ``terms`` values.

    Offline mode reads the bundled fixture.  Remote mode performs an
    HTTPS GET with a timeout and falls back to the fixture (with a
    warning) when the network fails; without a fixture the failure is
    raised as OeisError.
    """
    if not (len(id) > 1 and id[0] == "A" and id[1:].isdigit()):
        raise OeisError(f"{id!r} is not an OEIS identifier")
    if offline:
        record = _fixture_record(id, directory)
    else:
        try:
            record = _remote_record(id, timeout)
        except (urllib.error.URLError, OSError, ValueError) as exc:
            try:
                record = _fixture_record(id, directory)
            except OeisError:
                raise OeisError(f"remote fetch of {id} failed and no fixture exists: {exc}") from exc
            warnings.warn(f"remote fetch of {id} failed ({exc}); using the bundled fixture")
    if terms < 0:
        raise OeisError("term count must be non-negative")
    return SequenceRecord(id=record.id, terms=record.terms[:terms], provenance=record.provenance)


@dataclass(frozen=True)
class ComparisonReport:
    id: str
    compared: int
    first_mismatch: tuple | None  # (index, reference value, computed value)

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "id": self.id,
            "compared": self.compared,
            "ok": self.ok,
            "first_mismatch": (
                None if self.first_mismatch is None
                else {
                    "index": self.first_mismatch[0],
                    "reference": str(self.first_mismatch[1]),
                    "computed": str(self.first_mismatch[2]),
                }
            ),
        }

    def render(self) -> str:
        if self.ok:
            return f"{self.id}: {self.compared} terms agree"
        n, ref, got = self.first_mismatch
        return f"{self.id}: FIRST MISMATCH at n={n}: reference {ref}, computed {got}"


def compare(record: SequenceRecord, computed: list[int]) -> ComparisonReport:
    """Compare reference terms against computed ones, trimming to the
    shorter side and reporting the first disagreement if any."""
    reference = record.values()
    length = min(len(reference), len(computed))
    for k in range(length):
        if reference[k] != computed[k]:
            return ComparisonReport(record.id, length, (k + 1, reference[k], computed[k]))
    return ComparisonReport(record.id, length, None)
