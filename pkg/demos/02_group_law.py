"""Compose strongly stable automorphisms by their parameters and confirm against composed bijections.

Run: python3 demos/02_group_law.py
"""

import random

from verbalops.autgroup import compose, invert, make_params, params_to_wordsystem, quotient_class
from verbalops.exactfield import FieldSpec
from verbalops.relfree import VarietySpec
from verbalops.verbal import StarAlgebra, sigma_eval, words_from_bijection

field = FieldSpec.quadratic(2)
nilp4 = VarietySpec.nilpotent(4)
rng = random.Random(1)


def sample():
    while True:
        a12, a21 = field.random_element(rng, 3), field.random_element(rng, 3)
        if a12 not in (a21, -a21):
            return make_params(nilp4, field, rng.choice(["identity", "conjugation"]), a12, a21,
                               *(field.random_element(rng, 3) for _ in range(3)))


p, q = sample(), sample()
print("p     =", p)
print("q     =", q)
print("p o q =", compose(p, q))

# independent route: run the two bijections one after the other and read the words back
Wp, Wq = params_to_wordsystem(p), params_to_wordsystem(q)
Sp, Sq = StarAlgebra(Wp), StarAlgebra(Wq)
recovered = words_from_bijection(lambda e: sigma_eval(Wp, sigma_eval(Wq, e, Sq), Sp), nilp4, field)
print("matches composed bijections:", recovered == params_to_wordsystem(compose(p, q)))
print("p o p^-1 is the identity:   ", compose(p, invert(p)) == make_params(nilp4, field, "identity", 1, 0))

# the class modulo inner automorphisms multiplies as a semidirect product k* x| Aut k
for name, r in (("p", p), ("q", q), ("p o q", compose(p, q))):
    print(f"class of {name}:", quotient_class(r))
