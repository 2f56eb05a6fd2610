"""
Parser for the ASCII conditional-logic grammar

Precedence, tightest first: ~  &  |  >  ->  <->
& and | associate to the left; >, -> and <-> do not associate, so a chain
such as p>q>r must be parenthesized.
"""

import logging
from functools import lru_cache
from typing import Optional

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from .syntax import And, Cond, Formula, Iff, Imp, MetaVar, Not, Or, Schema, Var

logger = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: iff

    ?iff: imp
        | imp "<->" imp          -> biconditional

    ?imp: cond
        | cond "->" cond         -> implication

    ?cond: disj
         | disj ">" disj         -> conditional

    ?disj: conj
         | disj "|" conj         -> disjunction

    ?conj: neg
         | conj "&" neg          -> conjunction

    ?neg: "~" neg                -> negation
        | atom

    ?atom: VARNAME               -> variable
         | METAVAR               -> metavariable
         | "(" iff ")"

    VARNAME: /[a-z][a-z0-9_]*/
    METAVAR: /[A-Z]/

    %import common.WS
    %ignore WS
"""


class FormulaSyntaxError(ValueError):
    """Raised when text does not conform to the formula grammar"""

    def __init__(self, text: str, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.text = text
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"Syntax error{where} in '{text}': {message}")


class _ToFormula(Transformer):
    """Builds syntax-tree nodes bottom-up from the lark parse tree"""

    def variable(self, children):
        return Var(str(children[0]))

    def metavariable(self, children):
        return MetaVar(str(children[0]))

    def negation(self, children):
        return Not(children[0])

    def conjunction(self, children):
        return And(children[0], children[1])

    def disjunction(self, children):
        return Or(children[0], children[1])

    def conditional(self, children):
        return Cond(children[0], children[1])

    def implication(self, children):
        return Imp(children[0], children[1])

    def biconditional(self, children):
        return Iff(children[0], children[1])


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(FORMULA_GRAMMAR, parser="lalr", transformer=_ToFormula())


@lru_cache(maxsize=4096)
def parse(text: str) -> Formula:
    """
    Parse a formula or schema body.

    Raises:
        FormulaSyntaxError: on any lexical or syntactic error, including
            unparenthesized chains of non-associative connectives.
    """
    try:
        return _parser().parse(text)
    except UnexpectedInput as e:
        message = str(e).strip().splitlines()[0] if str(e).strip() else "unexpected input"
        raise FormulaSyntaxError(text, message, getattr(e, "line", None),
                                 getattr(e, "column", None)) from e
    except VisitError as e:
        raise FormulaSyntaxError(text, str(e.orig_exc)) from e


def parse_schema(name: str, text: str) -> Schema:
    """Parse a named schema; its metavariables are declared in alphabetical order"""
    body = parse(text)
    logger.debug(f"Parsed schema {name}: {text}")
    return Schema(name=name, body=body)
