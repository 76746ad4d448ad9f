"""Exact computation with finite boolean combinations of cosets in Z^n and Z^n x| C2."""
from .errors import (CosetkitError, EmptyInput, EmptySet, InfiniteIndex, InvalidCosetList,
                     MixedCarriers, NotAGraph, NotASubgroup, NotTopLevel, SubgroupNotInFamily,
                     UnboundSymbol)
from .group import (INV, Coset, GroupCarrier, GroupElement, Subgroup, coset_canonical,
                    coset_transversal, conjugate_subgroup, enumerate_ball, eval_term,
                    subgroup_index, subgroup_intersect, subgroup_membership)

ENGINE_VERSION = "cosetkit-0.1.0"
