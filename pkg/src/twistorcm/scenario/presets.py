"""Named CM fields (moduli as coefficient lists, constant term first)."""

PRESETS = {
    "gaussian": [1, 0, 1],                 # X^2 + 1
    "eisenstein": [1, 1, 1],               # X^2 + X + 1
    "zeta5": [1, 1, 1, 1, 1],              # X^4 + X^3 + X^2 + X + 1
    "zeta8": [1, 0, 0, 0, 1],              # X^4 + 1
    "zeta12": [1, 0, -1, 0, 1],            # X^4 - X^2 + 1
    # degree-6 cyclotomic fields, for runs beyond the desk-scale corpus
    "zeta7": [1, 1, 1, 1, 1, 1, 1],
    "zeta9": [1, 0, 0, 1, 0, 0, 1],
}


def preset_modulus(name: str):
    from ..errors import InvalidInput
    try:
        return list(PRESETS[name])
    except KeyError:
        raise InvalidInput(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
