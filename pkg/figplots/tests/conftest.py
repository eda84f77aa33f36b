"""Hand-written CSV fixtures; no physics is computed anywhere in this suite."""

from __future__ import annotations

HEADER = "subsystem,channel,policy,alpha,r_b,r_c,p_b,p_c,method,concurrence,l1"


def write_csv(path, rows: list[str]) -> str:
    path.write_text("\n".join([HEADER] + rows) + "\n")
    return str(path)


def small_line_csv(tmp_path):
    """Two alpha series over three r points, both methods present."""
    rows = []
    for alpha, base in (("0.5", 0.5), ("1", 1.0)):
        for r, scale in (("0", 1.0), ("0.4", 0.85), ("0.7853981633974483", 0.5)):
            value = base * scale
            for method, bump in (("paper", 0.0), ("sim", 0.011)):
                rows.append(
                    f"ab1c1,damping,reduced_qubit,{alpha},{r},{r},0.25,0.25,"
                    f"{method},{value + bump},{value + bump}"
                )
    return write_csv(tmp_path / "line.csv", rows)


def small_surface_csv(tmp_path):
    """Complete 3x3 (r, p) grid with a strict interior minimum along p."""
    rs = ("0", "0.39269908169872414", "0.7853981633974483")
    ps = ("0", "0.5", "1")
    rows = []
    for i, r in enumerate(rs):
        for j, p in enumerate(ps):
            value = (i + 1) * abs(float(p) - 0.5)  # valley along p = 0.5
            rows.append(
                f"ab1c1,phase-flip,reduced_qubit,0.5,{r},{r},{p},{p},"
                f"paper,{value},{value}"
            )
    return write_csv(tmp_path / "surface.csv", rows)
