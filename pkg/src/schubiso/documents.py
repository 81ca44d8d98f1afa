"""JSON documents for Schubert data.

A datum document looks like::

    {"labels": ["1", "2"], "cartan": [[2, -1], [-2, 2]],
     "word": ["2", "1"], "parabolic": ["2"]}

``labels`` defaults to ``"1".."n"`` and ``parabolic`` to the empty list.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cartan import CartanMatrix, validate
from .cohomology import SchubertDatum
from .errors import CartanError, InvalidDatum, ParseError, UnknownLabel
from .weyl import is_min_rep, min_rep, weyl_group


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def parse_cartan(doc: Any) -> CartanMatrix:
    if not isinstance(doc, dict) or "cartan" not in doc:
        raise ParseError('document must be an object with a "cartan" matrix')
    raw = doc["cartan"]
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise ParseError('"cartan" must be a list of integer rows')
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(x, (str, int)) for x in labels)):
        raise ParseError('"labels" must be a list of strings')
    return validate(raw, labels)


def _labels_list(doc: dict, key: str) -> list[str]:
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in value):
        raise ParseError(f'"{key}" must be a list of node labels')
    return [str(x) for x in value]


def parse_datum(doc: Any, normalize: bool = False) -> tuple[SchubertDatum, list[str]]:
    """Parse a datum document, returning the datum and any normalization warnings.

    Without ``normalize`` the word must be reduced and name a minimal coset
    representative; with it, the word is replaced by a reduced word of the
    minimal representative of its coset.
    """
    cartan = parse_cartan(doc)
    word = _labels_list(doc, "word")
    parabolic = _labels_list(doc, "parabolic")
    try:
        w = weyl_group(cartan).from_word(word)
        idx = frozenset(cartan.index(x) for x in parabolic)
    except UnknownLabel as exc:
        raise ParseError(str(exc)) from None
    warnings = []
    if w.length != len(word):
        if not normalize:
            raise InvalidDatum(f"word {word} is not reduced (length {w.length}); pass --normalize to reduce it")
        warnings.append(f"word {word} is not reduced; using {w.labeled_word()}")
    if not is_min_rep(w, idx):
        if not normalize:
            raise InvalidDatum(
                f"word {word} is not a minimal coset representative for parabolic {parabolic}; "
                "pass --normalize to replace it"
            )
        m = min_rep(w, idx)
        warnings.append(f"replacing {w.labeled_word()} by its minimal coset representative {m.labeled_word()}")
        w = m
    return SchubertDatum(cartan, w, idx), warnings


def load_datum(path: str | Path, normalize: bool = False) -> tuple[SchubertDatum, list[str]]:
    try:
        return parse_datum(load_json(path), normalize)
    except (ParseError, InvalidDatum) as exc:
        raise type(exc)(f"{path}: {exc}") from None
    except CartanError as exc:
        raise InvalidDatum(f"{path}: {exc}") from None


def dump_datum(d: SchubertDatum) -> str:
    return json.dumps(d.to_json(), sort_keys=True)
