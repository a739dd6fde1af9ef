"""PIM -> PSM transformation under a platform profile.

The transformation touches exactly four things: it emits Imports and
FoundationClasses from the profile, resolves each variable's generic
type to the platform type, and rewrites every I/O action into the
platform statement template.  The ``automat`` subtree is spliced into
the output byte-for-byte from the source document, and condition and
routine bodies are carried over unchanged; they lower to target syntax
only at code generation.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from .expr import GenericType
from .lowering import lower_expr_text
from .pim import PimError, _PIM_SCHEMA, check_structure
from .profiles import PLACEHOLDER, PlatformProfile
from .xmlio import parse_bytes, serialize, sub

# control kind recorded for GUI-mode I/O: flags toggle, everything
# else edits text
_GUI_CONTROLS = {
    GenericType.FLAG: "checkbox",
    GenericType.INTEGER: "textbox",
    GenericType.REAL: "textbox",
    GenericType.CHAR: "textbox",
    GenericType.STRING: "textbox",
}

_AUTOMAT_OPEN = re.compile(rb"<automat\s*>")


class TransformError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.detail = message


def extract_automat_segments(pim_bytes: bytes):
    """Byte spans of every <automat>...</automat>, in document order."""
    segments = []
    pos = 0
    while True:
        m = _AUTOMAT_OPEN.search(pim_bytes, pos)
        if not m:
            return segments
        end = pim_bytes.find(b"</automat>", m.start())
        if end < 0:
            raise TransformError("malformed-pim", "unterminated <automat> element")
        end += len(b"</automat>")
        segments.append(pim_bytes[m.start():end])
        pos = end


def transform(pim_bytes: bytes, profile: PlatformProfile) -> bytes:
    """Apply the profile; deterministic and total on valid input.

    Raises missing-type-mapping naming the variable and unknown-io-mode.
    """
    root = parse_bytes(pim_bytes)
    check_structure(root, _PIM_SCHEMA)
    automat_segments = extract_automat_segments(pim_bytes)

    psm = ET.Element(profile.psm_root, {"profile": profile.name})
    imports = sub(psm, "Imports")
    for imp in profile.imports:
        sub(imports, "import", imp)
    foundation = sub(psm, "FoundationClasses")
    sub(foundation, "OrderedCollection", profile.ordered_collection)
    sub(foundation, "UnorderedCollection", profile.unordered_collection)

    for phsa in root:
        out_phsa = sub(psm, "phsa", phsa_id=phsa.get("phsa_id"))
        _automat, condscheme, memory, iosystem = list(phsa)
        sub(out_phsa, "automat")  # placeholder, replaced by the source bytes below

        out_scheme = sub(out_phsa, "condscheme")
        conditions_el, funcs_el = list(condscheme)
        out_conditions = sub(out_scheme, "conditions")
        for c in conditions_el:
            sub(out_conditions, "condition", (c.text or "").strip(), cond_id=c.get("cond_id"))
        out_funcs = sub(out_scheme, "func_actions")
        for f in funcs_el:
            sub(out_funcs, "func_action", (f.text or "").strip(),
                act_id=f.get("act_id"), external=f.get("external", "false"))

        out_memory = sub(out_phsa, "memory")
        out_variables = sub(out_memory, "variables")
        for v in list(memory)[0]:
            generic = GenericType(v.get("type"))
            try:
                platform_type = profile.type_name(generic)
            except KeyError:
                raise TransformError("missing-type-mapping",
                                     "variable %r has type %s with no mapping in profile %r"
                                     % (v.get("name"), generic, profile.name))
            attrs = {"psm_var_name": v.get("name"), "psm_var_type": platform_type,
                     "init": v.get("init")}
            control = _GUI_CONTROLS.get(generic)
            if control:
                attrs["gui_control"] = control
            sub(out_variables, "variable", **attrs)

        out_iosystem = sub(out_phsa, "iosystem")
        out_actions = sub(out_iosystem, "io_actions")
        for act in list(iosystem)[0]:
            mode = act.get("mode")
            direction = "input" if act.tag == "i_action" else "output"
            key = "%s-%s" % ("gui" if mode == "GUI" else "stream", direction)
            template = profile.io_templates.get(key)
            if template is None:
                raise TransformError("unknown-io-mode",
                                     "no template for %s in profile %r" % (key, profile.name))
            if direction == "input":
                subject = act.get("var_ref")
                statement = template.replace(PLACEHOLDER, subject)
                sub(out_actions, "i_action", io_id=act.get("io_id"), mode=mode,
                    var_ref=subject, destination=act.get("destination"), statement=statement)
            else:
                subject = lower_expr_text(act.get("expr"))
                statement = template.replace(PLACEHOLDER, subject)
                sub(out_actions, "o_action", io_id=act.get("io_id"), mode=mode,
                    expr=act.get("expr"), destination=act.get("destination"),
                    statement=statement)

    rendered = serialize(psm)
    return _splice_automats(rendered, automat_segments)


def _splice_automats(rendered: bytes, segments) -> bytes:
    out = rendered
    for segment in segments:
        index = out.find(b"<automat/>")
        if index < 0:
            raise TransformError("malformed-pim", "phsa count changed during transform")
        out = out[:index] + segment + out[index + len(b"<automat/>"):]
    if out.find(b"<automat/>") >= 0:
        raise TransformError("malformed-pim", "more phsa elements than automat segments")
    return out


# ---------------------------------------------------------------------------
# Reading a PSM back (for codegen and validation)
# ---------------------------------------------------------------------------

_PSM_PHSA_SCHEMA = {
    "condscheme": _PIM_SCHEMA["condscheme"],
    "conditions": _PIM_SCHEMA["conditions"],
    "condition": _PIM_SCHEMA["condition"],
    "func_actions": _PIM_SCHEMA["func_actions"],
    "func_action": _PIM_SCHEMA["func_action"],
}


def check_psm(data: bytes) -> ET.Element:
    """Structural check; raises on leftover generic type names."""
    root = parse_bytes(data)
    children = [c.tag for c in root]
    if children[:2] != ["Imports", "FoundationClasses"]:
        raise PimError("dtd-violation",
                       "psm root needs Imports then FoundationClasses, found (%s)"
                       % ", ".join(children[:2]), "/" + root.tag)
    for phsa in root:
        if phsa.tag != "phsa":
            continue
        tags = [c.tag for c in phsa]
        if tags != ["automat", "condscheme", "memory", "iosystem"]:
            raise PimError("dtd-violation",
                           "psm phsa needs the four components, found (%s)" % ", ".join(tags),
                           "/%s/phsa[%s]" % (root.tag, phsa.get("phsa_id")))
        variables_el = phsa.find("memory/variables")
        for v in (variables_el if variables_el is not None else ()):
            # platform names may coincide with generic spellings (java char,
            # dotnet string); the transformation evidence is the attribute
            # switch from type= to psm_var_type=
            if v.get("type") is not None:
                raise PimError("unresolved-generic-type",
                               "variable %r still carries the generic type attribute"
                               % (v.get("psm_var_name") or v.get("name")))
            if not v.get("psm_var_type", ""):
                raise PimError("unresolved-generic-type",
                               "variable %r has no platform type" % v.get("psm_var_name"))
    return root
