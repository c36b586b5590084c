"""Derive the general word system of class-4 nilpotent algebras from the axioms alone.

Run: python3 demos/03_solver_replay.py
"""

from verbalops.autgroup import nilpotent4_reference_relations, solve_general_wordsystem
from verbalops.relfree import VarietySpec

family = solve_general_wordsystem(VarietySpec.nilpotent(4))
print("free parameters:", ", ".join(family.free_parameters))
print("constraint equations collected:", len(family.constraint_relations))
for stage in family.stages:
    print(f"  degree {stage.degree}: {len(stage.unknowns)} unknowns, {len(stage.equations)} equations")

print("\nselected eliminated coefficients:")
for name in ("gamma21", "gamma_(1,2)2", "gamma_1(1,2)", "alpha_(1,1)2", "psi1_3"):
    print(f"  {name} = {family.solution[name]}")

print("\nclosed form:")
print("  w_plus =", family.closed_form.w_plus)
print("  w_dot  =", family.closed_form.w_dot)

named = nilpotent4_reference_relations()
print(f"\n{sum(family.spans(r) for r in named.values())} of {len(named)} named relations lie in the constraint span")
