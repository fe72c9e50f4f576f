# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging
import re
from dataclasses import dataclass

from pyparsing import (
    Group,
    Keyword,
    OneOrMore,
    Optional,
    ParseException,
    ParseResults,
    Regex,
    StringEnd,
    Suppress,
    ZeroOrMore,
)

log = logging.getLogger(__name__)


__all__ = ["CnfParser", "Formula", "parse_cnf", "ParseError"]


class ParseError(Exception):
    def __init__(self, msg, line=0, column=0):
        self._msg = msg
        self._line = line
        self._column = column

    @property
    def line(self):
        return self._line

    @property
    def column(self):
        return self._column

    def __str__(self):
        if self._line == 0 and self._column == 0:
            return self._msg
        return "Line: {}, Column: {}\n {}".format(self._line, self._column, self._msg)


@dataclass(frozen=True)
class Formula:
    """
    A CNF formula. Literals are DIMACS integers: v for x_v, -v for its
    negation.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_count(self, assignment: dict[int, bool]) -> int:
        return sum(
            1
            for clause in self.clauses
            if any(assignment[abs(lit)] == (lit > 0) for lit in clause)
        )

    def to_dimacs(self) -> str:
        lines = ["p cnf {} {}".format(self.num_vars, self.num_clauses)]
        for clause in self.clauses:
            lines.append(" ".join(str(lit) for lit in clause) + " 0")
        return "\n".join(lines) + "\n"


class CnfParser:
    """
    Parse DIMACS CNF text into a Formula.

    Example:
    text = 'p cnf 2 2\\n1 -2 0\\n-1 2 0\\n'
    try:
        formula = CnfParser.parse(text)
    except ParseError:
        log.error("Failed to parse CNF")
    """

    _parser = None

    COMMENT = Regex(r"^c.*$", flags=re.MULTILINE)
    COUNT = Regex(r"[0-9]+").setParseAction(lambda toks: int(toks[0]))
    HEADER = (
        Suppress(Keyword("p"))
        + Suppress(Keyword("cnf"))
        + COUNT("num_vars")
        + COUNT("num_clauses")
    )
    LITERAL = Regex(r"-?[1-9][0-9]*").setParseAction(lambda toks: int(toks[0]))
    TERMINATOR = Suppress(Regex(r"0(?![0-9])"))
    CLAUSE = Group(OneOrMore(LITERAL) + TERMINATOR)
    # Some benchmark archives end the file with "%\n0"
    TRAILER = Suppress(Regex(r"%")) + Optional(TERMINATOR)

    @classmethod
    def generate_rule(cls):
        rule = (
            cls.HEADER
            + ZeroOrMore(cls.CLAUSE)
            + Optional(cls.TRAILER)
            + StringEnd()
        )
        rule.ignore(cls.COMMENT)
        return rule

    @classmethod
    def get_parser(cls, force_new_parser_obj: bool = False):
        if force_new_parser_obj:
            return cls.generate_rule()
        if not cls._parser:
            cls._parser = cls.generate_rule()
        return cls._parser

    @classmethod
    def parse(cls, text, force_new_parser_obj: bool = False) -> Formula:
        try:
            if not isinstance(text, str):
                text = text.decode("utf-8")
            result = cls.get_parser(force_new_parser_obj).parseString(text)
        except ParseException as e:
            raise ParseError(
                "Failed to parse DIMACS CNF: {}".format(e),
                e.lineno,
                e.column,
            )

        clauses = tuple(
            tuple(tok) for tok in result if isinstance(tok, ParseResults)
        )
        num_vars = result.num_vars
        if len(clauses) != result.num_clauses:
            raise ParseError(
                "Header declares {} clauses but {} were found".format(
                    result.num_clauses, len(clauses)
                )
            )
        for clause in clauses:
            for lit in clause:
                if abs(lit) > num_vars:
                    raise ParseError(
                        "Literal {} exceeds the declared {} variables".format(
                            lit, num_vars
                        )
                    )
        log.debug(
            "Parsed CNF with {} variables and {} clauses".format(num_vars, len(clauses))
        )
        return Formula(num_vars=num_vars, clauses=clauses)


def parse_cnf(text, force_new_parser_obj: bool = False) -> Formula:
    return CnfParser.parse(text, force_new_parser_obj)
