"""Regenerate the bundled molecule, registry and diagram files.

caffeine.cgf is maintained by hand and only read here.
"""

from pathlib import Path

from diagramma.chemgraph import MolecularGraph, parse_smiles_subset, write_cgf
from diagramma.corpus import data_dir, molecule
from diagramma.diaglang import Diagram, Token, write_dgf
from diagramma.generators import render_diagram

DATA = data_dir()

KNOWN = {
    "water": "O",
    "methane": "C",
    "ethane": "CC",
    "carbon_dioxide": "O=C=O",
    "ammonia": "N",
    "ethanol": "CCO",
    "dimethyl_ether": "COC",
    "formaldehyde": "C=O",
    "hydrogen_cyanide": "C#N",
    "hydrogen_sulfide": "S",
    "acetylene": "C#C",
}
SHORT = {"BALLSTICK3D": "bs", "WIRE2D": "wire", "WIRE2D_HDEP": "hdep", "SPACEFILL3D": "sf"}


def main() -> None:
    mols = DATA / "molecules"
    graphs = {}
    for name, smi in KNOWN.items():
        g = parse_smiles_subset(smi).with_name(name)
        graphs[name] = g
        (mols / f"{name}.cgf").write_text(write_cgf(g))
    graphs["caffeine"] = molecule("caffeine")
    graphs["hydrogen"] = MolecularGraph({1: "H", 2: "H"}, [(1, 2, 1)], name="hydrogen")
    (mols / "hydrogen.cgf").write_text(write_cgf(graphs["hydrogen"]))

    extra = {
        "methyl": MolecularGraph({1: "C", 2: "H", 3: "H", 4: "H"}, [(1, k, 1) for k in (2, 3, 4)], name="methyl"),
        "pentahydridocarbon": MolecularGraph(
            {1: "C", **{k: "H" for k in range(2, 7)}}, [(1, k, 1) for k in range(2, 7)], name="pentahydridocarbon"
        ),
        "pentaoxidane": parse_smiles_subset("OOOOO").with_name("pentaoxidane"),
        "carbon_helium_mixture": MolecularGraph({1: "C", 2: "He"}, [], name="carbon_helium_mixture"),
    }
    extra["pentaoxidane"] = MolecularGraph(
        extra["pentaoxidane"].atoms, extra["pentaoxidane"].bonds, name="pentaoxidane", intent="hypothesised"
    )
    for name, g in extra.items():
        (mols / f"{name}.cgf").write_text(write_cgf(g))

    registry_names = sorted(set(graphs))
    (DATA / "registry.cgf").write_text("\n".join(write_cgf(graphs[n]) for n in registry_names))

    dgf = DATA / "diagrams"
    for old in dgf.glob("*.dgf"):
        old.unlink()
    for name in registry_names:
        for lang, short in SHORT.items():
            d = render_diagram(graphs[name], lang, seed=7)
            d = d.replace(name=f"{name}-{short}")
            (dgf / f"{name}-{short}.dgf").write_text(write_dgf(d))
    # the pentavalent carbon: grammatical, chemically impossible
    ch5 = render_diagram(extra["pentahydridocarbon"], "WIRE2D", seed=7).replace(name="pentavalent-carbon-wire")
    (dgf / "pentavalent-carbon-wire.dgf").write_text(write_dgf(ch5))
    hyp = render_diagram(extra["pentaoxidane"], "BALLSTICK3D", seed=7).replace(name="pentaoxidane-bs")
    (dgf / "pentaoxidane-bs.dgf").write_text(write_dgf(hyp))


if __name__ == "__main__":
    main()
