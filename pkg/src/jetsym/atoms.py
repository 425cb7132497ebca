"""Atoms: the indivisible symbols an expression is a polynomial fraction over.

Every atom is a tuple subclass whose tuple contents are its canonical sort key,
so atoms hash, compare and order at C speed.  The leading rank fixes the
global order: independent variables < jets < parameters < unknown functions
< exponentials.
"""
from __future__ import annotations

VAR, JET, PARAM, FUNC, EXP = range(5)

# x before t, then everything else alphabetically
_VAR_PRIORITY = {"x": 0, "t": 1}


def var_priority(name: str) -> tuple:
    return (_VAR_PRIORITY.get(name, 2), name)


class Atom(tuple):
    __slots__ = ()

    @property
    def rank(self) -> int:
        return self[0]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class Var(Atom):
    """Independent variable such as x, t or a similarity variable r."""

    __slots__ = ()

    def __new__(cls, name: str):
        return tuple.__new__(cls, (VAR, var_priority(name), name))

    @property
    def name(self) -> str:
        return self[2]

    def __str__(self) -> str:
        return self.name

    def __reduce__(self):
        return (Var, (self.name,))


class Jet(Atom):
    """Derivative coordinate u_J of a dependent variable.

    ``dirs`` lists the independent variables of the dependent variable in
    canonical order, ``counts`` the number of derivatives along each.
    """

    __slots__ = ()

    def __new__(cls, dep: str, dirs, counts=None):
        dirs = tuple(dirs)
        if counts is None:
            counts = (0,) * len(dirs)
        counts = tuple(int(c) for c in counts)
        if len(counts) != len(dirs) or any(c < 0 for c in counts):
            raise ValueError(f"bad multi-index {counts!r} for directions {dirs!r}")
        return tuple.__new__(cls, (JET, sum(counts), dep, dirs, counts))

    @property
    def order(self) -> int:
        return self[1]

    @property
    def dep(self) -> str:
        return self[2]

    @property
    def dirs(self) -> tuple:
        return self[3]

    @property
    def counts(self) -> tuple:
        return self[4]

    def count(self, direction: str) -> int:
        try:
            return self.counts[self.dirs.index(direction)]
        except ValueError:
            return 0

    def raised(self, direction: str, n: int = 1) -> Jet:
        i = self.dirs.index(direction)
        c = list(self.counts)
        c[i] += n
        return Jet(self.dep, self.dirs, c)

    def base(self) -> Jet:
        return Jet(self.dep, self.dirs)

    def covers(self, other: Jet) -> bool:
        """True when ``self`` is a derivative of ``other`` (componentwise >=)."""
        return (self.dep == other.dep and self.dirs == other.dirs
                and all(a >= b for a, b in zip(self.counts, other.counts)))

    def __str__(self) -> str:
        if not self.order:
            return self.dep
        return self.dep + "_" + "".join(d * c for d, c in zip(self.dirs, self.counts))

    def __reduce__(self):
        return (Jet, (self.dep, self.dirs, self.counts))


class Param(Atom):
    """Constant symbol; every derivative of it vanishes."""

    __slots__ = ()

    def __new__(cls, name: str):
        return tuple.__new__(cls, (PARAM, name))

    @property
    def name(self) -> str:
        return self[1]

    def __str__(self) -> str:
        return self.name

    def __reduce__(self):
        return (Param, (self.name,))


class Func(Atom):
    """Opaque function applied to expression arguments, possibly differentiated.

    ``derivs`` holds the number of derivatives taken in each argument slot.
    """

    __slots__ = ()

    def __new__(cls, name: str, args, derivs=None):
        args = tuple(args)
        if derivs is None:
            derivs = (0,) * len(args)
        derivs = tuple(derivs)
        if len(derivs) != len(args):
            raise ValueError("derivative counts must match the argument count")
        return tuple.__new__(cls, (FUNC, name, derivs, args))

    @property
    def name(self) -> str:
        return self[1]

    @property
    def derivs(self) -> tuple:
        return self[2]

    @property
    def args(self) -> tuple:
        return self[3]

    def differentiated(self, slot: int) -> Func:
        d = list(self.derivs)
        d[slot] += 1
        return Func(self.name, self.args, d)

    def underived(self) -> Func:
        return Func(self.name, self.args)

    def __str__(self) -> str:
        from .printer import format_func
        return format_func(self)

    def __reduce__(self):
        return (Func, (self.name, self.args, self.derivs))


class Exp(Atom):
    """exp(arg) for a normalized exponent; only flows introduce these."""

    __slots__ = ()

    def __new__(cls, arg):
        return tuple.__new__(cls, (EXP, arg))

    @property
    def arg(self):
        return self[1]

    def __str__(self) -> str:
        from .printer import print_expr
        return f"exp({print_expr(self.arg)})"

    def __reduce__(self):
        return (Exp, (self.arg,))


def is_composite(a) -> bool:
    return a[0] == FUNC or a[0] == EXP
