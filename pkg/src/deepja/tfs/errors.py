"""Exceptions raised while building hierarchies and grammars."""


class GrammarError(Exception):
    """Base class for every load-time error."""


class HierarchyError(GrammarError):
    pass


class UnknownTypeError(HierarchyError, KeyError):
    def __init__(self, name, context=None):
        self.name = name
        self.context = context
        where = f" (referenced from {context})" if context else ""
        super().__init__(f"unknown type {name!r}{where}")

    def __str__(self):
        return self.args[0]


class UndefinedTypeError(UnknownTypeError):
    """A grammar-source definition names a type that was never declared."""


class CycleError(HierarchyError):
    def __init__(self, types):
        self.types = list(types)
        super().__init__("cycle in supertype graph among: " + ", ".join(self.types))


class AmbiguousGlbError(HierarchyError):
    def __init__(self, a, b, candidates=()):
        self.pair = (a, b)
        self.candidates = list(candidates)
        super().__init__(
            f"types {a} and {b} have no unique greatest lower bound "
            f"(maximal common subtypes: {', '.join(self.candidates)})"
        )


class FeatureReintroductionError(HierarchyError):
    def __init__(self, feature, first, second):
        self.feature = feature
        super().__init__(f"feature {feature} introduced by both {first} and {second}")


class UnknownFeatureError(HierarchyError):
    def __init__(self, feature, context=None):
        self.feature = feature
        where = f" in {context}" if context else ""
        super().__init__(f"feature {feature} is not introduced by any type{where}")


class ConstraintClashError(HierarchyError):
    def __init__(self, name, failure):
        self.name = name
        self.failure = failure
        super().__init__(f"constraint of {name} is inconsistent: {failure}")
