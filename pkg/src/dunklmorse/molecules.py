"""Built-in diatomic constants and the published energy tables used for reproduction."""
from __future__ import annotations

import difflib

from .errors import UnknownMoleculeError
from .spectrum import Molecule

BUILTIN = {
    "H2": Molecule("H2", P=60.8296, D=38292.0, alpha=1.440),
    "HCl": Molecule("HCl", P=10.5930, D=17244.0, alpha=2.380),
    "I2": Molecule("I2", P=0.0374, D=12550.0, alpha=4954.0),
}


def builtin_molecules() -> dict[str, Molecule]:
    return dict(BUILTIN)


def lookup(name: str) -> Molecule:
    for key, mol in BUILTIN.items():
        if key.lower() == name.lower():
            return mol
    close = difflib.get_close_matches(name, list(BUILTIN), n=3, cutoff=0.3)
    hint = f"; did you mean {', '.join(close)}?" if close else ""
    raise UnknownMoleculeError(f"unknown molecule {name!r} (available: {', '.join(BUILTIN)}){hint}")


# Published E_{n,1,1} in eV for isotropic mu_i = -0.4 (table 2) and +0.4 (table 3).
TABLE_N = (0, 3, 7, 10, 13, 15, 16, 17, 18, 19, 20)

PUBLISHED = {
    "table2": {
        "mu_i": -0.4,
        "H2": (-3.99223, -2.62833, -1.24766, -0.54057, -0.114969, 0.0123821,
               0.0291423, 0.0146258, -0.0311674, -0.108237, -0.216584),
        "HCl": (-1.97218, -1.31169, -0.639328, -0.29128, -0.0771368, -0.00876624,
                0.00310151, 0.0000909185, -0.017798, -0.0505653, -0.0982109),
        "I2": (-16.6989, -1302.44, -6203.1, -12268.8, -20382.0, -26929.1,
               -30544.0, -34386.5, -38456.6, -42754.4, -47279.7),
    },
    "table3": {
        "mu_i": 0.4,
        "H2": (-3.08793, -1.89144, -0.733998, -0.194321, 0.0638656, 0.0796061,
               0.0405612, -0.0297604, -0.131359, -0.264234, -0.428386),
        "HCl": (-1.88912, -1.2426, -0.588979, -0.25495, -0.0548261, 0.00419822,
                0.0113929, 0.00370922, -0.0188528, -0.0562931, -0.108612),
        "I2": (-16.6988, -1302.44, -6203.1, -12268.4, -20382.0, -26929.1,
               -30544.0, -34386.5, -38456.6, -42754.4, -47279.7),
    },
}
