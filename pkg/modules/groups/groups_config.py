"""Groups module configuration."""

# Dihedral realizations: permutation of the n-gon vertices, or the rotation/reflection action on ℝ²
DIHEDRAL_REALIZATIONS = ("vertices", "plane")

# Decimal digits used to identify float matrices during closure of explicit groups
FLOAT_KEY_DIGITS = 9

# CLI group spec strings: "S:n", "C:n", "D:n", "D:n:plane"; anything else is read as a JSON file
GROUP_FAMILIES = {
    "S": "symmetric",
    "C": "cyclic",
    "D": "dihedral",
}

# Family used by the "trivial" spec
TRIVIAL_SPEC = "trivial"
