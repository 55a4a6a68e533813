"""Region plots for the built-in triples with real points, as SVG files.

    python3 scripts/render_figures.py [--out figures] [--grid 256]
"""

import argparse
import os

from conicbundle import corpus
from conicbundle.model import quartic_from_triple
from conicbundle.plot import PlotConfig, region_plot
from conicbundle.topology import IsotopyClass, isotopy_class

# wider boxes where an oval leaves the default view
BOXES = {
    "irr2nonnested": (-3.0, 5.0, -4.0, 4.0),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--grid", type=int, default=256)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name in corpus.names():
        T = corpus.get(name)
        if isotopy_class(quartic_from_triple(T)).isotopy_class is IsotopyClass.Empty:
            continue
        cfg = PlotConfig(grid=args.grid, box=BOXES.get(name, PlotConfig.box))
        path = os.path.join(args.out, f"{name}.svg")
        region_plot(T, path, cfg)
        print(path)


if __name__ == "__main__":
    main()
