"""Regenerate tests/goldens from the shipped corpus and tests/data.

Run from the repository root:  python3 tests/regen_goldens.py
Review the diff before committing; the goldens are the frozen CLI output.
``python3 tests/regen_goldens.py --check reverse`` only compares (orders:
forward, reverse, shuffle<seed>).
"""

import json
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

from homlr.cli import COMMANDS, corpus, render, run  # noqa: E402

GOLDEN_DIR = os.path.join(HERE, "goldens")
DATA_DIR = os.path.join(HERE, "data")

# (file, command, params) runs beyond the default grid
EXTRA = [
    ("F1.hlr", "h2", {"n": "1"}),
    ("F2.hlr", "h2", {"n": "3"}),
    ("F3.hlr", "h2", {"module": "canonical"}),
    ("F4.hlr", "h2", {"module": "A_left"}),
    ("F3.hlr", "ext-check", {"extension": "E_cob"}),
    ("F3.hlr", "lift-aut", {"extension": "E_cob"}),
    ("F6.hlr", "lift-der", {"derivation": "ad_h"}),
    ("F6.hlr", "lift-der", {"derivation": "w1_to_w2"}),
    ("F6.hlr", "compose", {"outer": "E", "inner": "U"}),
    ("F2.hlr", "uce", {"hlr": "F2"}),
]


def golden_name(fname, command, params=None):
    stem = fname.rsplit(".", 1)[0]
    extra = "".join("__%s-%s" % (k, params[k]) for k in sorted(params or {}))
    return "%s__%s%s.json" % (stem, command, extra)


def inputs():
    """(file name, text) for the corpus and the malformed inputs."""
    out = sorted(corpus().items())
    for name in sorted(os.listdir(DATA_DIR)):
        if name.endswith(".hlr"):
            with open(os.path.join(DATA_DIR, name)) as fh:
                out.append((name, fh.read()))
    return out


def grid():
    """(golden file name, file name, text, command, params)."""
    texts = dict(inputs())
    rows = []
    for name, text in sorted(texts.items()):
        for cmd in sorted(COMMANDS):
            rows.append((golden_name(name, cmd), name, text, cmd, {}))
    for name, cmd, params in EXTRA:
        rows.append((golden_name(name, cmd, params), name, texts[name], cmd, params))
    return rows


def check(order: str = "forward") -> list:
    """Re-run the grid in the given order; returns the mismatching goldens."""
    with open(os.path.join(GOLDEN_DIR, "exit_codes.json")) as fh:
        codes = json.load(fh)
    rows = grid()
    if order == "reverse":
        rows.reverse()
    elif order.startswith("shuffle"):
        import random
        random.Random(int(order[7:] or 0)).shuffle(rows)
    bad = []
    for gname, _, text, cmd, params in rows:
        report, code = run(cmd, text, params)
        with open(os.path.join(GOLDEN_DIR, gname)) as fh:
            if render(report) != fh.read() or code != codes[gname]:
                bad.append(gname)
    return bad


def main():
    if len(sys.argv) > 2 and sys.argv[1] == "--check":
        bad = check(sys.argv[2])
        print("\n".join(bad) if bad else "all goldens match")
        sys.exit(1 if bad else 0)
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    codes = {}
    for gname, _, text, cmd, params in grid():
        report, code = run(cmd, text, params)
        with open(os.path.join(GOLDEN_DIR, gname), "w") as fh:
            fh.write(render(report))
        codes[gname] = code
    with open(os.path.join(GOLDEN_DIR, "exit_codes.json"), "w") as fh:
        json.dump(codes, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print("wrote %d goldens" % len(codes))


if __name__ == "__main__":
    main()
