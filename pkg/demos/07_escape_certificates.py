"""
Escape certificates: why the translation group has no finite basis
==================================================================

The additive group generated by all shifts t^(-2n)*a is checked to be
a strictly increasing union of finitely generated subgroups: for each
k, the shift t^(-2k)*a escapes the span of the first k generators.
"""

import json

from autcert.fingen import (
    LaurentElement,
    certify_nonfg,
    escape_exponent,
    membership,
    shift_generators,
)

# The generators of the k-th subgroup in the chain, here k = 3.
gens = shift_generators(3)
print("generators:", [str(g) for g in gens])

# Membership in their integer span is decided with a witness...
inside = membership(gens, 3 * gens[0] + (-2) * gens[1])
print("member:", inside.member, "witness:", inside.witness)

# ...and the next shift in the family is refused.
escape = LaurentElement.t_power(-2 * escape_exponent(gens))
outside = membership(gens, escape)
print("escape:", escape, "member:", outside.member)

# The full certificate packages one escape per stage, each re-verified.
cert = certify_nonfg(max_k=5)
print("stages:", len(cert.stages), "passed:", cert.passed)
for stage in cert.stages:
    print(
        f"  k={stage.k}: {stage.escape} escapes span of {len(stage.generators)}"
        f", joins span of {len(stage.generators) + 1}"
    )

# Everything serializes with exact string numbers for third-party checks.
blob = cert.to_json_dict()
print("json stage 1 escape:", json.dumps(blob["stages"][0]["escape"]))
