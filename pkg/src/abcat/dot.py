"""DOT text for quivers: solid arrows carry multiplicities, dashed edges join M and τM."""

from __future__ import annotations

from .arquiver import Quiver


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(q: Quiver) -> str:
    lines = [f"digraph {_q(q.name or 'quiver')} {{", "  rankdir=LR;", "  node [shape=plaintext];"]
    for v in q.vertices:
        lines.append(f"  {_q(v)};")
    order = {v: i for i, v in enumerate(q.vertices)}
    for (a, b), m in sorted(q.arrows.items(), key=lambda t: (order[t[0][0]], order[t[0][1]])):
        lines.append(f"  {_q(a)} -> {_q(b)} [label=\"{m}\"];")
    seen = set()
    for a, b in q.tau:
        key = frozenset((a, b))
        if key in seen:
            continue
        seen.add(key)
        lines.append(f"  {_q(a)} -> {_q(b)} [style=dashed, dir=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
