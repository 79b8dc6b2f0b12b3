"""Independent brute-force oracles the unit tests check the engine against.

The rewriter here works on literal letter sequences with the defining
relations as local swaps, so it shares no code path with the engine's
closed-form exponent arithmetic; agreement of the two on random words is the
confluence evidence for the normal-form machinery.
"""

from qforms.scalars import q_power

# letters: 'v', 'V' (= v^-1), 's' (= zs), 'z'; normal order v/V < s < z
ORDER = {"v": 0, "V": 0, "s": 1, "z": 2}

# scalar picked up when the out-of-order pair (x, y) is swapped to (y, x);
# derived from v z = q z v, v zs = q zs v, z zs = q^2 zs z and conjugation
# by the inverse of v
SWAP = {
    ("s", "v"): q_power(-1), ("s", "V"): q_power(1),
    ("z", "v"): q_power(-1), ("z", "V"): q_power(1),
    ("z", "s"): q_power(2),
}

STAR = {"v": "V", "V": "v", "z": "s", "s": "z"}


def rewrite(word, coeff=None):
    """Normal form of a letter word: dict {(k, l, m): scalar} with a single
    entry (the algebras here are domains with monomial relations)."""
    coeff = q_power(0) if coeff is None else coeff
    word = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if (x, y) in (("v", "V"), ("V", "v")):
                del word[i:i + 2]
                changed = True
                break
            if ORDER[x] > ORDER[y]:
                coeff = coeff * SWAP[(x, y)]
                word[i], word[i + 1] = y, x
                changed = True
                break
    k = word.count("v") - word.count("V")
    return {(k, word.count("s"), word.count("z")): coeff}


def star_word(word):
    """Letterwise star: reverse the word and star each letter."""
    return [STAR[x] for x in reversed(word)]


def monomial_letters(k, l, m):
    letters = ["v"] * k if k >= 0 else ["V"] * (-k)
    return letters + ["s"] * l + ["z"] * m
