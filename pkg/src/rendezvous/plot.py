"""Space-time diagrams as plain SVG: position across, time downward."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .line_model import Plan

WIDTH, HEIGHT, PAD = 640, 480, 40
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def plan_svg(plan: Plan, title: str | None = None) -> str:
    xs = [float(x) for tr in plan.trajectories for _, x in tr.breakpoints]
    x_lo, x_hi = min(xs), max(xs)
    t_hi = float(plan.all_gather_time) or 1.0
    x_span = (x_hi - x_lo) or 1.0

    def sx(x) -> float:
        return PAD + (float(x) - x_lo) / x_span * (WIDTH - 2 * PAD)

    def st(t) -> float:
        return PAD + float(t) / t_hi * (HEIGHT - 2 * PAD)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line class="axis" x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="#999"/>',
        f'<text x="{PAD}" y="{PAD - 8}" font-size="12">{escape(title or plan.strategy or "plan")}'
        f" (time runs down, all-gather at t = {plan.all_gather_time})</text>",
    ]
    for rid, tr in enumerate(plan.trajectories):
        pts = [(t, x) for t, x in tr.breakpoints if t <= plan.all_gather_time]
        if pts[-1][0] != plan.all_gather_time:
            pts.append((plan.all_gather_time, pts[-1][1]))
        coords = " ".join(f"{sx(x):.2f},{st(t):.2f}" for t, x in pts)
        color = COLORS[rid % len(COLORS)]
        out.append(
            f'<polyline data-robot="{rid}" points="{coords}" fill="none" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
    for ev in plan.events:
        robots = " ".join(str(r) for r in sorted(ev.robots))
        out.append(
            f'<circle class="meet" cx="{sx(ev.position):.2f}" cy="{st(ev.time):.2f}" r="3" '
            f'fill="black"><title>t={ev.time} x={ev.position} robots {robots}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
