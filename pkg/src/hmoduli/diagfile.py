"""Reading an X_2 model (generators plus diagonal) from a text file.

Format, one directive per line, ``#`` starts a comment::

    generator y 2
    generator z 4
    diagonal y = y_1 + y_2
    diagonal z = z_1 + z_2 + y_1.y_2

Diagonal images use the element text format over the tensor square, where
factor i of generator ``g`` is written ``g_i``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .graded import Algebra, AlgebraMorphism, Generator, ParseError, format_element, parse_element, tensor_square
from .homloop import Diagonal

_GEN = re.compile(r"generator\s+(?P<name>\S+)\s+(?P<deg>\S+)\s*$")
_DIAG = re.compile(r"diagonal\s+(?P<name>\S+)\s*=\s*(?P<body>.*)$")


def parse_diagonal(text: str) -> Diagonal:
    gens: list[Generator] = []
    images: dict[str, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.lstrip()
        if body.startswith("generator"):
            m = _GEN.match(body)
            if not m:
                raise ParseError("expected 'generator NAME DEGREE'", lineno, indent + 1)
            try:
                deg = int(m.group("deg"))
                gens.append(Generator(m.group("name"), deg))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, indent + m.start("name") + 1) from None
        elif body.startswith("diagonal"):
            m = _DIAG.match(body)
            if not m:
                raise ParseError("expected 'diagonal NAME = ELEMENT'", lineno, indent + 1)
            name = m.group("name")
            if name in images:
                raise ParseError(f"second diagonal for {name!r}", lineno, indent + m.start("name") + 1)
            images[name] = (lineno, indent + m.start("body"), m.group("body"))
        else:
            raise ParseError(f"unknown directive {body.split()[0]!r}", lineno, indent + 1)
    if not gens:
        raise ParseError("no generators declared", 1, 1)
    try:
        a = Algebra(tuple(gens), max(g.degree for g in gens))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
    t = tensor_square(a)
    for name in images:
        if name not in a.index:
            lineno, col, _ = images[name]
            raise ParseError(f"diagonal for undeclared generator {name!r}", lineno, 1)
    parsed = []
    for g in gens:
        if g.name not in images:
            raise ParseError(f"no diagonal given for generator {g.name!r}", len(text.splitlines()), 1)
        lineno, col, body = images[g.name]
        e = parse_element(body, t, line=lineno, col_offset=col)
        if not e.is_homogeneous(g.degree):
            raise ParseError(f"diagonal of {g.name!r} is not homogeneous of degree {g.degree}",
                             lineno, col + 1)
        parsed.append(e)
    return Diagonal(AlgebraMorphism(a, t, parsed))


def parse_diagonal_file(path) -> Diagonal:
    return parse_diagonal(Path(path).read_text())


def format_diagonal(nu: Diagonal) -> str:
    lines = [f"generator {g.name} {g.degree}" for g in nu.algebra.generators]
    lines += [f"diagonal {g.name} = {format_element(im)}"
              for g, im in zip(nu.algebra.generators, nu.underlying.images)]
    return "\n".join(lines) + "\n"
