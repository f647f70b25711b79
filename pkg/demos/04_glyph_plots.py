# # Glyph pictures of the singularities
#
# Each hemisphere is drawn in orthographic projection from its own pole, with
# unit arrows showing the field direction. For Spin(4) the arrows turn 4 times
# around N and -2 times around S. Output goes to demos/out/.
from pathlib import Path

import numpy as np

from spherefields import NorthSouth, Spin
from spherefields.plot import project_field, write_svg

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
for name, field in (("spin4", Spin(4)), ("north_south", NorthSouth())):
    for hemisphere in ("north", "south"):
        path = out / f"{name}_{hemisphere}.svg"
        write_svg(path, field, hemisphere, density=21, title=f"{name} {hemisphere}")
        print("wrote", path)

# The net turning of the arrows along a small circle is the index.
t = np.linspace(0, 2 * np.pi, 720, endpoint=False)
for hemisphere in ("north", "south"):
    dx, dy = project_field(Spin(4), hemisphere, 0.3 * np.cos(t), 0.3 * np.sin(t))
    ang = np.arctan2(dy, dx)
    turns = np.angle(np.exp(1j * (np.roll(ang, -1) - ang))).sum() / (2 * np.pi)
    print(f"Spin(4), {hemisphere}: arrows turn {turns:+.3f} times")
