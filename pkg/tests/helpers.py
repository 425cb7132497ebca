from jetsym.models import model
from jetsym.parser import DEFAULT_CONTEXT, parse_expr
from jetsym.reduction import reduced_context

CTX = DEFAULT_CONTEXT.with_symbols(["c", "k", "alpha", "epsilon"], ["F", "f", "xi", "phi"])
WCTX = reduced_context(params=["c", "k"])


def p(text):
    return parse_expr(text, CTX)


def pw(text):
    return parse_expr(text, WCTX)


BBM = model("bbm")
KDV = model("kdv")
