"""Shared JSON document reading."""
from __future__ import annotations

import json
import os
from typing import Mapping

from .errors import ParseError


def read_document(source, what: str = "document") -> Mapping:
    """Accept a mapping, JSON text, or a path to a JSON file."""
    if isinstance(source, Mapping):
        return source
    if isinstance(source, (bytes, bytearray)):
        source = source.decode()
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and not source.lstrip().startswith(("{", "["))
    ):
        with open(source) as fh:
            source = fh.read()
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise ParseError(f"{what} must be a JSON object")
    return doc
