"""Render the projected polytope of the worked example as an SVG file."""

import sys

from nonlinear_matching import example_one
from nonlinear_matching.cli import render_polytope_svg

path = sys.argv[1] if len(sys.argv) > 1 else "polytope.svg"
render_polytope_svg(example_one(), path)
print(f"wrote {path}")
