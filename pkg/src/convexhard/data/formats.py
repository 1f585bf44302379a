"""JSON file formats: instance files, points files and reports.

Rationals travel as strings ("p/q" or an integer string) so nothing passes
through floating point. Disk indices are 1-based in files. Parse errors are
raised as ValueError with the line of the offending entry.

Instance file::

    {
      "radius": "1",
      "centers": [
        ["0", "0"],
        ["2", "0"]
      ]
    }

Points file::

    {
      "L": [
        ["0", "0", "0"],
        ["2", "0", "4"]
      ],
      "B": [
        {"point": ["1", "0", "2"], "pair": [1, 2]}
      ]
    }
"""

import hashlib
import json
import logging
import os
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.geometry import Point2, Point3
from ..core.reduction import (
    BlockingPoint,
    DiskInstance,
    ReductionOutput,
    TangentPair,
    validate_instance,
)

logger = logging.getLogger(__name__)

STDIO = "-"

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class _RawFloat(str):
    """Marks a JSON number with a fraction or exponent; kept as source text."""


class _Located:
    """Line lookup for the raw text of one JSON document."""

    def __init__(self, text: str) -> None:
        self.text = text

    def line_of(self, pos: int) -> int:
        return self.text.count("\n", 0, max(pos, 0)) + 1

    def item_lines(self, key: str) -> List[int]:
        """Line of each element of the top-level array stored under key."""
        match = re.search(r'"%s"\s*:\s*\[' % re.escape(key), self.text)
        if match is None:
            return []
        lines = []
        depth = 1
        expecting = True
        pos = match.end()
        text = self.text
        while pos < len(text) and depth > 0:
            ch = text[pos]
            if ch == '"':
                if depth == 1 and expecting:
                    lines.append(self.line_of(pos))
                    expecting = False
                pos += 1
                while pos < len(text) and text[pos] != '"':
                    pos += 2 if text[pos] == "\\" else 1
            elif ch in "[{":
                if depth == 1 and expecting:
                    lines.append(self.line_of(pos))
                    expecting = False
                depth += 1
            elif ch in "]}":
                depth -= 1
            elif ch == "," and depth == 1:
                expecting = True
            elif not ch.isspace() and depth == 1 and expecting:
                lines.append(self.line_of(pos))
                expecting = False
            pos += 1
        return lines

    def key_line(self, key: str) -> int:
        pos = self.text.find(f'"{key}"')
        return self.line_of(pos) if pos >= 0 else 1


def _fail(line: int, message: str) -> ValueError:
    return ValueError(f"line {line}: {message}")


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_RawFloat)
    except json.JSONDecodeError as e:
        raise _fail(e.lineno, f"invalid JSON: {e.msg}") from e


def parse_rational(token: Any, line: int = 1) -> Fraction:
    """Parse "p/q", an integer string or a JSON integer into a Fraction.

    Unreduced fractions are accepted and normalized; a zero denominator,
    decimals and floats are rejected.

    Raises:
        ValueError: with the given line number
    """
    if isinstance(token, bool) or isinstance(token, _RawFloat):
        raise _fail(line, f"expected an exact rational, got {token}")
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str) or not _RATIONAL.match(token.strip()):
        raise _fail(line, f"expected a rational string 'p/q' or integer, got {token!r}")
    text = token.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise _fail(line, f"zero denominator in {token!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Canonical form: "p/q" in lowest terms with q > 1, else an integer."""
    return str(Fraction(value))


def _coords(entry: Any, dim: int, line: int) -> List[Fraction]:
    if not isinstance(entry, list) or len(entry) != dim:
        raise _fail(line, f"expected a list of {dim} coordinates, got {entry!r}")
    return [parse_rational(c, line) for c in entry]


def _require_object(doc: Any, keys: Sequence[str], what: str) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise _fail(1, f"{what} must be a JSON object")
    for key in keys:
        if key not in doc:
            raise _fail(1, f"{what} is missing the {key!r} field")
    return doc


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> DiskInstance:
    """Parse and validate an instance file.

    Raises:
        ValueError: on malformed JSON, bad rationals, a radius other than 1,
            or overlapping / coinciding disks
    """
    doc = _require_object(_loads(text), ("radius", "centers"), "instance file")
    where = _Located(text)
    radius = parse_rational(doc["radius"], where.key_line("radius"))
    if radius != 1:
        raise _fail(where.key_line("radius"), f"radius must be \"1\", got {doc['radius']!r}")
    entries = doc["centers"]
    if not isinstance(entries, list):
        raise _fail(where.key_line("centers"), "centers must be a list")
    lines = where.item_lines("centers")
    centers = []
    for k, entry in enumerate(entries):
        line = lines[k] if k < len(lines) else where.key_line("centers")
        x, y = _coords(entry, 2, line)
        centers.append(Point2(x, y))
    instance = DiskInstance(tuple(centers))
    report = validate_instance(instance)
    if not report:
        j = report.violation[1] if report.violation else 0
        line = lines[j] if j < len(lines) else 1
        raise _fail(line, f"invalid instance: {_one_based(report.reason)}")
    return instance


def _one_based(reason: str) -> str:
    # reasons name 0-based disks; files speak 1-based
    return re.sub(r"\b(disks|centers) (\d+) and (\d+)",
                  lambda m: f"{m.group(1)} {int(m.group(2)) + 1} and {int(m.group(3)) + 1}",
                  reason)


def serialize_instance(instance: DiskInstance) -> str:
    rows = [
        json.dumps([format_rational(c.x), format_rational(c.y)])
        for c in instance.centers
    ]
    return _document([("radius", json.dumps("1")), ("centers", _array(rows))])


def instance_hash(instance: DiskInstance) -> str:
    """sha256 of the canonical serialization."""
    return hashlib.sha256(serialize_instance(instance).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Points files
# ---------------------------------------------------------------------------


def parse_points(text: str) -> ReductionOutput:
    """Parse a points file into a ReductionOutput.

    The centers are the (x, y) parts of L. The points are kept as written, so
    a hand-edited file is checked as it stands.

    Raises:
        ValueError: on malformed entries, duplicate points, or pairs that are
            out of range, unordered or repeated
    """
    doc = _require_object(_loads(text), ("L", "B"), "points file")
    where = _Located(text)
    if not isinstance(doc["L"], list):
        raise _fail(where.key_line("L"), "L must be a list")
    if not isinstance(doc["B"], list):
        raise _fail(where.key_line("B"), "B must be a list")

    seen: Dict[Point3, int] = {}
    l_lines = where.item_lines("L")
    lifted = []
    for k, entry in enumerate(doc["L"]):
        line = l_lines[k] if k < len(l_lines) else where.key_line("L")
        p = Point3(*_coords(entry, 3, line))
        if p in seen:
            raise _fail(line, f"duplicate point {p}")
        seen[p] = line
        lifted.append(p)

    n = len(lifted)
    b_lines = where.item_lines("B")
    blocking = []
    pairs = set()
    for k, entry in enumerate(doc["B"]):
        line = b_lines[k] if k < len(b_lines) else where.key_line("B")
        if not isinstance(entry, dict) or "point" not in entry or "pair" not in entry:
            raise _fail(line, "blocking entries need 'point' and 'pair'")
        p = Point3(*_coords(entry["point"], 3, line))
        if p in seen:
            raise _fail(line, f"duplicate point {p}")
        seen[p] = line
        pair = entry["pair"]
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise _fail(line, f"pair must be two integers, got {pair!r}")
        i, j = pair
        if not 1 <= i < j <= n:
            raise _fail(line, f"pair must satisfy 1 <= i < j <= {n}, got {pair}")
        if (i, j) in pairs:
            raise _fail(line, f"pair {pair} appears twice")
        pairs.add((i, j))
        blocking.append(BlockingPoint(p, TangentPair(i - 1, j - 1)))

    centers = tuple(Point2(p.x, p.y) for p in lifted)
    return ReductionOutput(centers, tuple(lifted), tuple(blocking))


def serialize_points(output: ReductionOutput) -> str:
    l_rows = [json.dumps(_point3(p)) for p in output.lifted]
    b_rows = [
        json.dumps({"point": _point3(b.point), "pair": [b.pair.i + 1, b.pair.j + 1]})
        for b in output.blocking
    ]
    return _document([("L", _array(l_rows)), ("B", _array(b_rows))])


def _point3(p: Point3) -> List[str]:
    return [format_rational(p.x), format_rational(p.y), format_rational(p.z)]


def parse_any(text: str) -> Union[DiskInstance, ReductionOutput]:
    """Parse an instance file or a points file, told apart by their fields."""
    doc = _loads(text)
    if isinstance(doc, dict) and "centers" in doc:
        return parse_instance(text)
    if isinstance(doc, dict) and "L" in doc:
        return parse_points(text)
    raise _fail(1, "expected an instance file (centers) or a points file (L, B)")


# ---------------------------------------------------------------------------
# Layout and I/O
# ---------------------------------------------------------------------------


def _array(rows: Sequence[str]) -> str:
    if not rows:
        return "[]"
    return "[\n    " + ",\n    ".join(rows) + "\n  ]"


def _document(fields: Sequence[tuple]) -> str:
    body = ",\n".join(f"  {json.dumps(key)}: {value}" for key, value in fields)
    return "{\n" + body + "\n}\n"


def serialize_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"


def read_text(path: Optional[str]) -> str:
    """Read a file, or stdin for None or "-"."""
    if path is None or path == STDIO:
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e}") from e


def write_text(path: Optional[str], text: str) -> None:
    """Write text atomically (temporary file then rename), or to stdout for
    None or "-"."""
    if path is None or path == STDIO:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"Wrote {len(text)} characters to {target}")
