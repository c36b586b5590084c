"""Build a class-3 nilpotent word system, apply its verbal operations and check it.

Run: python3 demos/01_word_systems.py
"""

from verbalops.autgroup import make_params, params_to_wordsystem
from verbalops.exactfield import FieldSpec
from verbalops.freemagma import generators
from verbalops.relfree import VarietySpec
from verbalops.verbal import check_op1, check_op2_axioms, check_sigma_iso, inner_solve, sigma_eval, star_apply

field = FieldSpec.quadratic(2)
nilp3 = VarietySpec.nilpotent(3)
x1, x2 = generators(2)
(x,) = generators(1)

# addition twisted by gamma12 = 1, multiplication untouched, scalars acting by phi = identity
W = params_to_wordsystem(make_params(nilp3, field, "identity", alpha12=1, alpha21=0, gamma12=1))
print("w_plus:", W.w_plus)
print("w_dot: ", W.w_dot)
print("new sum of x1 and x2:", star_apply(W, "plus", [x1, x2]))
print("2 acting on x:       ", star_apply(W, "scalar", [x], scalar=field.element(2)))

for report in (check_op1(W), check_op2_axioms(W), check_sigma_iso(W)):
    print(report.summary())

# sigma is the identity on generators and rewrites every product and scalar through the new operations
print("sigma(2*x1*x2 + x2):", sigma_eval(W, (x1 * x2).scale(2) + x2))

inner = inner_solve(W)
print("inner:", bool(inner), "certificate:", inner.certificate)

# the same shape with the conjugation of Q(sqrt 2) is still a valid system but is not inner
W_conj = params_to_wordsystem(make_params(nilp3, field, "conjugation", 1, 0, 1))
print("conjugate twist inner:", bool(inner_solve(W_conj)))
