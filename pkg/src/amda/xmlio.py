"""Deterministic XML reading/writing on top of the stdlib ElementTree.

All artifact writers go through ``serialize`` so identical inputs yield
byte-identical files: fixed declaration, two-space indentation, attribute
order as inserted, UTF-8, trailing newline.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8" standalone="no"?>'


class XmlFormatError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def parse_bytes(data: bytes) -> ET.Element:
    try:
        return ET.fromstring(data)
    except ET.ParseError as err:
        raise XmlFormatError("malformed-xml", "cannot parse document: %s" % err) from err


def _render(el: ET.Element, depth: int, lines: list) -> None:
    pad = "  " * depth
    attrs = "".join(" %s=%s" % (k, quoteattr(v)) for k, v in el.attrib.items())
    children = list(el)
    text = (el.text or "").strip()
    if not children and not text:
        lines.append("%s<%s%s/>" % (pad, el.tag, attrs))
        return
    if not children:
        lines.append("%s<%s%s>%s</%s>" % (pad, el.tag, attrs, escape(text), el.tag))
        return
    lines.append("%s<%s%s>" % (pad, el.tag, attrs))
    for child in children:
        _render(child, depth + 1, lines)
    lines.append("%s</%s>" % (pad, el.tag))


def serialize(root: ET.Element, doctype: str = "") -> bytes:
    """Render an element tree to canonical bytes.

    Mixed content is not supported (the artifact formats never need it);
    element text is emitted on one line, children each on their own.
    """
    lines = [XML_DECLARATION]
    if doctype:
        lines.append(doctype)
    _render(root, 0, lines)
    lines.append("")
    return "\n".join(lines).encode("utf-8")


def sub(parent: ET.Element, tag: str, text: str = "", **attrs) -> ET.Element:
    el = ET.SubElement(parent, tag, dict(attrs))
    if text:
        el.text = text
    return el
