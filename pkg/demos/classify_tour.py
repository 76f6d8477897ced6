"""Tour of the classifier: standard vs good determinantal schemes.

Three 2-row matrices over k[x0..x3] tell the whole story: one fails
goodness, one is good via a literal row deletion, and the coordinate axes
need a genuinely generalized row.
"""

from detschemes import (
    PolyRing,
    classify,
    delete_row,
    find_generalized_row,
    generalized_deletion,
    height,
    minors,
    presentation_from_strings,
)

ring = PolyRing(("x0", "x1", "x2", "x3"))


def show(title, rows):
    pres = presentation_from_strings(ring, rows)
    rep = classify(pres)
    print(f"--- {title} ---")
    for row in rows:
        print("   ", " | ".join(row))
    print(f"t = {rep.t}, r = {rep.r}: expected codimension {rep.expected_codim}")
    print(f"height of maximal minors:   {rep.actual_height}")
    print(f"height of submaximal minors: {rep.submaximal_height}")
    print(f"standard: {rep.is_standard}   good: {rep.is_good}")
    return pres


# Its maximal minors generate the square of a point ideal: the expected
# codimension 3 is attained (standard), but every generalized row deletion
# leaves the height-3 entry ideal, one short of the required 4.
double_point = show(
    "double point (standard, not good)",
    [["x1", "x2", "x3", "0"], ["0", "x1", "x2", "x3"]],
)
print("minors:", [str(g) for g in minors(double_point, 2).generators])
print()

# A degree-3 curve where deleting the literal second row leaves (x0,x1,x2),
# which already has the required height 3.
curve = show("cubic curve (good)", [["x0", "x1", "x2"], ["0", "x0", "x3"]])
witness = find_generalized_row(curve, seed=0)
print(f"witness: combination {witness.row_combination} (literal row {witness.literal_row})")
print()

# The coordinate axes: both literal rows fail, but a random combination of
# the two rows works -- this is what "generalized row" buys.
axes = show("coordinate axes (good, but subtly)", [["-x3", "x2", "0"], ["0", "-x2", "x1"]])
for i in (0, 1):
    left = delete_row(axes, i)
    print(f"delete literal row {i}: entry ideal height {height(minors(left, 1))} (need 3)")
witness = find_generalized_row(axes, seed=0)
print(f"witness: combination {witness.row_combination}, seed {witness.seed}")
deleted = generalized_deletion(axes, witness.row_combination, witness.seed)
print("after deleting that combination:", [str(p) for p in deleted.entries[0]])
print("its entry ideal height:", height(minors(deleted, 1)))
