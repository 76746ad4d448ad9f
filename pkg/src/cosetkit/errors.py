class CosetkitError(Exception):
    pass


class MixedCarriers(CosetkitError):
    pass


class NotASubgroup(CosetkitError):
    pass


class InfiniteIndex(CosetkitError):
    pass


class UnboundSymbol(CosetkitError):
    pass


class EmptySet(CosetkitError):
    pass


class SubgroupNotInFamily(CosetkitError):
    pass


class NotTopLevel(CosetkitError):
    pass


class EmptyInput(CosetkitError):
    pass


class NotAGraph(CosetkitError):
    pass


class InvalidCosetList(CosetkitError):
    """Some listed coset has finite index in the ambient subgroup."""
