#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Minimal SVG 1.1 document builder with fixed number formatting.
"""

from typing import Dict, Iterable, List, Sequence, Tuple

Point = Tuple[float, float]


def _fmt(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


class SvgDocument:
    def __init__(self):
        self.parts: List[str] = []

    def header(self, width: int, height: int):
        self.parts.append(
            '<?xml version="1.0" standalone="no"?>\n'
            '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            'xmlns="http://www.w3.org/2000/svg">\n'
        )

    def title(self, text: str):
        self.parts.append(f"<title>{text}</title>\n")

    def group_start(self, attr: Dict[str, str]):
        attrs = " ".join(f'{key}="{value}"' for key, value in sorted(attr.items()))
        self.parts.append(f"<g {attrs}>\n")

    def group_end(self):
        self.parts.append("</g>\n")

    def filled_rectangle(self, x1: float, y1: float, x2: float, y2: float, fill: str = ""):
        fill_attr = f' fill="{fill}"' if fill else ""
        self.parts.append(
            f'<rect x="{_fmt(x1)}" y="{_fmt(y1)}" width="{_fmt(x2 - x1)}" height="{_fmt(y2 - y1)}"{fill_attr}/>\n'
        )

    def polyline_path(self, polylines: Iterable[Sequence[Point]], closed: Sequence[bool], stroke: str, width: float,
                      extra: str = ""):
        """One ``<path>`` element holding every polyline as a subpath."""
        commands = []
        for points, is_closed in zip(polylines, closed):
            head, *tail = points
            step = "M" + _fmt(head[0]) + " " + _fmt(head[1])
            step += "".join(f"L{_fmt(x)} {_fmt(y)}" for x, y in tail)
            commands.append(step + ("Z" if is_closed else ""))
        extra_attr = f" {extra}" if extra else ""
        self.parts.append(
            f'<path d="{"".join(commands)}" fill="none" stroke="{stroke}" stroke-width="{_fmt(width)}"{extra_attr}/>\n'
        )

    def get_svg(self) -> str:
        return "".join(self.parts) + "</svg>\n"
