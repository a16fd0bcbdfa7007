"""Deterministic serialization: 17-significant-digit JSON and CSV.

The stdlib JSON encoder formats floats with ``repr`` (shortest
round-trip), which is deterministic but not fixed-width; results here are
specified to carry 17 significant digits so reruns are byte-identical and
consumers can diff files textually.  A small recursive writer keeps full
control of the float format.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import ParseError


def format_float17(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _write(obj: Any, out: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    closing_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float17(obj))
    elif isinstance(obj, complex):
        _write({"re": obj.real, "im": obj.imag}, out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _write(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _write(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps17(obj: Any, indent: int = 2) -> str:
    """JSON text with every float at 17 significant digits."""
    out: list[str] = []
    _write(obj, out, indent, 0)
    return "".join(out)


TRACE_CSV_HEADER = "t_s,omega_i,omega_s,P_s,P_i,re_A,im_A,alpha_ab,norm_error"


def trace_to_csv(trace) -> str:
    """A trace as CSV with the fixed observable column order."""
    lines = [TRACE_CSV_HEADER]
    for p in trace.points:
        fields = (
            p.t,
            p.omega_i,
            p.omega_s,
            p.obs.p_s,
            p.obs.p_i,
            p.obs.a.real,
            p.obs.a.imag,
            p.obs.alpha_ab,
            p.norm_error,
        )
        lines.append(",".join(format_float17(f) for f in fields))
    return "\n".join(lines) + "\n"


def trace_to_obj(trace) -> list[dict]:
    """The JSON-array form of a trace (same fields as the CSV)."""
    return [
        {
            "t_s": p.t,
            "omega_i": p.omega_i,
            "omega_s": p.omega_s,
            "P_s": p.obs.p_s,
            "P_i": p.obs.p_i,
            "re_A": p.obs.a.real,
            "im_A": p.obs.a.imag,
            "alpha_ab": p.obs.alpha_ab,
            "norm_error": p.norm_error,
        }
        for p in trace.points
    ]


def schedule_to_obj(schedule) -> dict:
    return {
        "segments": [
            {
                "duration_s": s.duration,
                "omega_i_radps": s.omega_i,
                "omega_s_radps": s.omega_s,
            }
            for s in schedule.segments
        ]
    }


def schedule_from_obj(obj: dict):
    """Parse the schedule-file schema {"segments": [{duration_s, ...}]}."""
    from .dynamics import ControlSchedule, Segment

    if not isinstance(obj, dict) or "segments" not in obj:
        raise ParseError("schedule JSON must contain a 'segments' array", obj)
    segs = []
    for i, entry in enumerate(obj["segments"]):
        try:
            segs.append(
                Segment(
                    float(entry["duration_s"]),
                    float(entry["omega_i_radps"]),
                    float(entry["omega_s_radps"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad schedule segment #{i}: {exc}", entry) from None
    return ControlSchedule(tuple(segs))
