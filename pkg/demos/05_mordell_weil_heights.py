"""
Mordell-Weil heights: torsion sections and the narrow lattice
=============================================================

Heights come from the defining formula 2*chi + 2*(P.O) minus local
correction terms read off the fiber component a section meets.  All
section data here is extracted from the exact intersection table.
"""

from autcert.fibration import FiberDivisor, KodairaType, map_fiber
from autcert.mwl import (
    IDENTITY_COMPONENT,
    HeightContext,
    ModInt,
    SectionData,
    SmoothLocusAut,
    component_index_sum,
    compose_smooth_locus,
    height,
    is_torsion,
    section_from_config,
)
from autcert.scalars import RatFunc
from autcert.surface import build_double_kummer, epsilon_involution, extend_with_conics

x = extend_with_conics(build_double_kummer())
eps = epsilon_involution(x)

n1 = FiberDivisor.of(("E2", "C32", "F3", "C31", "E1", "C41", "F4", "C42"))
fibers = [("N1", n1), ("N1eps", map_fiber(n1, eps.curve_map))]
i8 = KodairaType.I(8)
ctx = HeightContext(chi=2, fibers=(("N1", i8), ("N1eps", i8)), zero_name="C21")

# C12 against the zero section C21: height 0, hence torsion.
c12 = section_from_config(x, fibers, "C12", "C21")
print("C12 components:", {k: str(v) for k, v in c12.components.items()})
print("height(C12) =", height(ctx, c12), " torsion:", is_torsion(ctx, c12))

# C11 has height 2; its component index in the 8-cycle is 0.
c11 = section_from_config(x, fibers, "C11", "C21")
print("height(C11) =", height(ctx, c11))

# The index sum of C11 and C2 in the cycle is 4 mod 8.
idx_c11 = section_from_config(x, [("N1", n1)], "C11", "C21").components["N1"]
idx_c2 = section_from_config(x, [("N1", n1)], "C2", "C21").components["N1"]
print("index sum:", component_index_sum([idx_c11, idx_c2]))

# A narrow section of a IV* fibration on a rational surface: height 2.
narrow_ctx = HeightContext(chi=1, fibers=(("M2", KodairaType.plain("IV*")),))
narrow = SectionData("P", 0, {"M2": IDENTITY_COMPONENT})
print("narrow height:", height(narrow_ctx, narrow))

# The induced smooth-locus action scales by t and shifts by 4; its
# square scales by t^2 with no shift.
t = RatFunc.var("t")
f_scale = SmoothLocusAut(t, ModInt(4, 8))
square = compose_smooth_locus(f_scale, f_scale)
print("square:", square.scale, ",", square.shift)
