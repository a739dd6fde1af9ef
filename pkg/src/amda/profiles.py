"""Platform profiles: the declarative mapping driving PIM -> PSM.

A profile names one platform and supplies import statements, scalar and
collection type mappings, and I/O statement templates (stream/GUI, each
direction).  Templates carry exactly one ``{subject}`` placeholder.
Profiles may include further profile files; includes load depth-first in
listed order and later definitions override earlier ones, the including
file last.  Format reference: docs/profile-format.md.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .expr import GenericType
from .xmlio import parse_bytes

SCALARS = (GenericType.INTEGER, GenericType.REAL, GenericType.FLAG,
           GenericType.CHAR, GenericType.STRING)
TEMPLATE_KEYS = ("stream-input", "stream-output", "gui-input", "gui-output")
PLACEHOLDER = "{subject}"


class ProfileError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.detail = message


@dataclass
class PlatformProfile:
    name: str
    psm_root: str
    imports: tuple = ()
    scalar_types: dict = field(default_factory=dict)  # GenericType -> platform name
    ordered_collection: str = ""
    unordered_collection: str = ""
    io_templates: dict = field(default_factory=dict)  # TEMPLATE_KEYS -> template

    def type_name(self, t: GenericType) -> str:
        if t is GenericType.ORD_COLLECT:
            return self.ordered_collection
        if t is GenericType.UNORD_COLLECT:
            return self.unordered_collection
        return self.scalar_types[t]


def load_profile(data: bytes, base_dir: Path = None) -> PlatformProfile:
    """Parse profile bytes; ``base_dir`` resolves relative includes.

    Raises ProfileError: missing-type-mapping when any generic type or io
    template ends up unmapped, include-cycle on circular includes.
    """
    profile = PlatformProfile(name="", psm_root="")
    _merge_profile(profile, data, base_dir, source="<inline>", seen=[])
    _finish(profile)
    return profile


def load_profile_file(path) -> PlatformProfile:
    path = Path(path)
    return load_profile(path.read_bytes(), path.parent)


def _merge_profile(profile: PlatformProfile, data: bytes, base_dir, source: str, seen: list) -> None:
    root = parse_bytes(data)
    if root.tag != "profile":
        raise ProfileError("bad-profile", "%s: expected <profile> root, found <%s>" % (source, root.tag))

    # includes first: the including file's own definitions win
    for section in root:
        if section.tag != "includes":
            continue
        for inc in section:
            href = inc.get("href", "")
            if base_dir is None:
                raise ProfileError("bad-profile",
                                   "%s includes %r but no base directory is known" % (source, href))
            target = (Path(base_dir) / href).resolve()
            if target in seen:
                raise ProfileError("include-cycle",
                                   "profile include cycle through %s" % target)
            seen.append(target)
            _merge_profile(profile, target.read_bytes(), target.parent, str(target), seen)
            seen.pop()

    if root.get("name"):
        profile.name = root.get("name")
    if root.get("psm_root"):
        profile.psm_root = root.get("psm_root")
    for section in root:
        if section.tag == "imports":
            profile.imports = profile.imports + tuple(
                (imp.text or "").strip() for imp in section if imp.tag == "import")
        elif section.tag == "types":
            for attr, value in section.attrib.items():
                try:
                    t = GenericType(attr)
                except ValueError:
                    raise ProfileError("bad-profile",
                                       "%s: unknown generic type %r in <types>" % (source, attr))
                profile.scalar_types[t] = value
        elif section.tag == "collections":
            if section.get("ordered"):
                profile.ordered_collection = section.get("ordered")
            if section.get("unordered"):
                profile.unordered_collection = section.get("unordered")
        elif section.tag == "io":
            for mode_el in section:
                if mode_el.tag not in ("stream", "gui"):
                    raise ProfileError("bad-profile",
                                       "%s: unknown io mode element <%s>" % (source, mode_el.tag))
                for direction in ("input", "output"):
                    template = mode_el.get(direction)
                    if template:
                        profile.io_templates["%s-%s" % (mode_el.tag, direction)] = template
        elif section.tag == "includes":
            pass
        else:
            raise ProfileError("bad-profile", "%s: unknown section <%s>" % (source, section.tag))


def _finish(profile: PlatformProfile) -> None:
    if not profile.name:
        raise ProfileError("bad-profile", "profile has no name")
    if not profile.psm_root:
        raise ProfileError("bad-profile", "profile %r names no psm_root" % profile.name)
    for t in SCALARS:
        if t not in profile.scalar_types:
            raise ProfileError("missing-type-mapping",
                               "profile %r maps no platform type for %s" % (profile.name, t))
    if not profile.ordered_collection:
        raise ProfileError("missing-type-mapping",
                           "profile %r maps no ordered collection class" % profile.name)
    if not profile.unordered_collection:
        raise ProfileError("missing-type-mapping",
                           "profile %r maps no unordered collection class" % profile.name)
    for key in TEMPLATE_KEYS:
        template = profile.io_templates.get(key)
        if not template:
            raise ProfileError("missing-type-mapping",
                               "profile %r has no %s statement template" % (profile.name, key))
        if template.count(PLACEHOLDER) != 1:
            raise ProfileError("bad-template",
                               "template %s must contain the %s placeholder exactly once"
                               % (key, PLACEHOLDER))
