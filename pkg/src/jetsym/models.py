"""Built-in model equations."""
from .equation import SourceEquation
from .parser import DEFAULT_CONTEXT

MODELS = {
    "bbm": "u_t + u_x + u*u_x - u_xxt = 0",
    "kdv": "u_t + u_x + u*u_x + u_xxx = 0",
    "transport": "u_t = u_x",
}


def model(name: str, context=DEFAULT_CONTEXT) -> SourceEquation:
    try:
        text = MODELS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(sorted(MODELS))}") from None
    return SourceEquation.parse(text, context, name)


def bbm() -> SourceEquation:
    return model("bbm")


def kdv() -> SourceEquation:
    return model("kdv")
