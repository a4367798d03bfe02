"""Built-in category instances and the instance resolver used by the CLI.

Built-in names: ``tl`` (generic Kauffman parameter), ``tl@N`` (cyclotomic
specialization A = zeta_N), ``sweedler``, ``z2hopf`` (the Z/2 group
algebra with its character grading) and ``groupcat:SPEC`` where SPEC is
e.g. ``Z2``, ``Z3`` or ``Z2xZ2``.  Anything else is treated as a path to
a Hopf structure-constant JSON file, looked up relative to the
``SKEINLAB_INSTANCE_PATH`` directories when not found directly.
"""

from __future__ import annotations

import os
import re

from ..category import GradingGroup
from .groupcat import GroupInstance, element_name
from .hopf import (HopfAxiomError, HopfData, HopfInstance, ModuleSpec, REGULAR,
                   SummandData, build_sweedler_instance,
                   build_z2_group_algebra_instance, load_hopf_file)
from .tl import TLInstance, build_tl_instance

__all__ = [
    "GroupInstance", "HopfAxiomError", "HopfData", "HopfInstance", "ModuleSpec",
    "REGULAR", "SummandData", "TLInstance", "build_tl_instance",
    "build_sweedler_instance", "build_z2_group_algebra_instance",
    "build_group_instance", "element_name", "load_hopf_file", "resolve_instance",
]


def build_group_instance(grading: GradingGroup) -> GroupInstance:
    return GroupInstance(grading)


def _parse_group_spec(spec: str) -> GradingGroup:
    parts = spec.split("x")
    orders = []
    for p in parts:
        m = re.fullmatch(r"Z(\d+)", p.strip())
        if not m:
            raise ValueError(f"bad group spec {spec!r}; expected like Z2 or Z2xZ3")
        orders.append(int(m.group(1)))
    return GradingGroup(tuple(orders))


def resolve_instance(name: str):
    if name == "tl":
        return build_tl_instance()
    m = re.fullmatch(r"tl@(\d+)", name)
    if m:
        return build_tl_instance(int(m.group(1)))
    if name == "sweedler":
        return build_sweedler_instance()
    if name == "z2hopf":
        return build_z2_group_algebra_instance()
    if name.startswith("groupcat:"):
        return GroupInstance(_parse_group_spec(name.split(":", 1)[1]))
    candidates = [name]
    for d in os.environ.get("SKEINLAB_INSTANCE_PATH", "").split(os.pathsep):
        if d:
            candidates.append(os.path.join(d, name))
    for c in candidates:
        if os.path.exists(c):
            return load_hopf_file(c)
    raise ValueError(f"unknown instance {name!r}")
