"""Exception types shared across the package."""


class DecompositionError(ValueError):
    """A decomposition does not fit the graph it is used with."""


class ResourceGuardError(RuntimeError):
    """An exhaustive routine was asked to run beyond its size guard."""


class DegenerateGadgetError(ArithmeticError):
    """A Brylawski gadget has no usable factorisation at the requested point."""


class InapplicableError(ValueError):
    """An algorithm was requested at a point it cannot handle."""
