"""Textual formats for diagrams, certificates, and elements.

Documents are UTF-8 JSON objects with string keys and integer/array
values.  Entries must be decimal integer literals; floats are rejected
with the offending field path.  Parsing a diagram also runs validation,
so a document either yields a clean diagram or a structured error.
"""

from __future__ import annotations

import json
from typing import Optional

from .colimit import ColimitElement
from .confluence import CertificatePeriod, ConfluenceCertificate
from .diagrams import SequenceDiagram, validate
from .matrices import Matrix


class FormatError(ValueError):
    """Malformed document; the message carries the offending field path."""


class _FloatLiteral(str):
    """Marker for rejected float literals, so errors can carry the path."""


def _loads(text: str) -> object:
    try:
        return json.loads(text, parse_float=_FloatLiteral)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a well-formed document: {exc}") from None


def _expect_int(value: object, path: str) -> int:
    if isinstance(value, _FloatLiteral):
        raise FormatError(f"non-integer entry at {path}")
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"expected an integer at {path}")
    return value


def _expect_list(value: object, path: str) -> list:
    if not isinstance(value, list):
        raise FormatError(f"expected an array at {path}")
    return value


def _expect_obj(value: object, path: str) -> dict:
    if not isinstance(value, dict):
        raise FormatError(f"expected an object at {path}")
    return value


def _matrix(value: object, path: str) -> Matrix:
    rows = _expect_list(value, path)
    data = []
    width: Optional[int] = None
    for r, row in enumerate(rows):
        row = _expect_list(row, f"{path}[{r}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"ragged matrix rows at {path}[{r}]")
        data.append([_expect_int(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)])
    return Matrix(data, cols=width if width is not None else 0)


def parse_diagram(text: str, check: bool = True) -> SequenceDiagram:
    doc = _expect_obj(_loads(text), "document")
    mode = doc.get("mode")
    if mode not in ("plain", "simplicial"):
        raise FormatError('mode must be "plain" or "simplicial"')
    mono = doc.get("mono", False)
    if not isinstance(mono, bool):
        raise FormatError("mono must be a boolean")
    ranks = [_expect_int(r, f"ranks[{n}]") for n, r in enumerate(_expect_list(doc.get("ranks"), "ranks"))]
    if not ranks:
        raise FormatError("ranks must be nonempty")
    transitions = [
        _matrix(m, f"transitions[{n}]")
        for n, m in enumerate(_expect_list(doc.get("transitions", []), "transitions"))
    ]
    period = None
    if doc.get("period") is not None:
        obj = _expect_obj(doc["period"], "period")
        period = (
            _expect_int(obj.get("prefix_len"), "period.prefix_len"),
            _expect_int(obj.get("period_len"), "period.period_len"),
        )
    try:
        seq = SequenceDiagram(mode, ranks, transitions, mono, period)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if check:
        report = validate(seq)
        if not report.ok:
            raise FormatError("; ".join(report.violations))
    return seq


def emit_diagram(seq: SequenceDiagram) -> str:
    doc = {
        "mode": seq.mode,
        "mono": seq.mono_required,
        "ranks": list(seq.ranks),
        "transitions": [m.to_lists() for m in seq.transitions],
    }
    if seq.period is not None:
        doc["period"] = {"prefix_len": seq.period[0], "period_len": seq.period[1]}
    return json.dumps(doc, indent=2) + "\n"


def parse_certificate(text: str) -> ConfluenceCertificate:
    doc = _expect_obj(_loads(text), "document")
    i_idx = [_expect_int(x, f"i_indices[{n}]") for n, x in enumerate(_expect_list(doc.get("i_indices"), "i_indices"))]
    k_idx = [_expect_int(x, f"k_indices[{n}]") for n, x in enumerate(_expect_list(doc.get("k_indices"), "k_indices"))]
    f_mats = [_matrix(m, f"f_mats[{n}]") for n, m in enumerate(_expect_list(doc.get("f_mats"), "f_mats"))]
    g_mats = [_matrix(m, f"g_mats[{n}]") for n, m in enumerate(_expect_list(doc.get("g_mats"), "g_mats"))]
    periodic = None
    if doc.get("periodic") is not None:
        obj = _expect_obj(doc["periodic"], "periodic")
        periodic = CertificatePeriod(
            _expect_int(obj.get("index_step_a"), "periodic.index_step_a"),
            _expect_int(obj.get("index_step_b"), "periodic.index_step_b"),
            _expect_int(obj.get("period_len"), "periodic.period_len"),
        )
    return ConfluenceCertificate(i_idx, k_idx, f_mats, g_mats, periodic)


def emit_certificate(cert: ConfluenceCertificate) -> str:
    doc = {
        "i_indices": list(cert.i_indices),
        "k_indices": list(cert.k_indices),
        "f_mats": [m.to_lists() for m in cert.f_mats],
        "g_mats": [m.to_lists() for m in cert.g_mats],
    }
    if cert.periodic is not None:
        doc["periodic"] = {
            "index_step_a": cert.periodic.index_step_a,
            "index_step_b": cert.periodic.index_step_b,
            "period_len": cert.periodic.period_len,
        }
    return json.dumps(doc, indent=2) + "\n"


def parse_element(text: str) -> ColimitElement:
    """Parse ``"i:x1,x2,..."``; an empty coordinate list is allowed for
    rank-0 stages (``"i:"``)."""
    stage_part, sep, vec_part = text.partition(":")
    if not sep:
        raise FormatError(f"element {text!r} is not of the form 'stage:x1,x2,...'")
    try:
        stage = int(stage_part)
        vec = [int(x) for x in vec_part.split(",")] if vec_part.strip() else []
    except ValueError:
        raise FormatError(f"element {text!r} has non-integer parts") from None
    if stage < 1:
        raise FormatError("element stages are 1-based")
    return ColimitElement(stage, vec)


def format_element(e: ColimitElement) -> str:
    return f"{e.stage}:{','.join(str(x) for x in e.vec)}"
