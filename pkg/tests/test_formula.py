"""
Tests for formula parsing, printing, matching and paths
"""

import pytest
import random
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from condlogic.formula import (
    And, Cond, FormulaSyntaxError, Iff, Imp, LEFT, MetaVar, Not, ONLY, Or, PathError, RIGHT,
    SubstitutionError, Var, conditional_depth, conjoin, instantiate, match_all, match_schema,
    metavariables, modal_atom_list, modal_atoms, occurrences, parse, parse_schema, render,
    replace_all_at, replace_at, sub_at, variables,
)

p, q, r, s = Var("p"), Var("q"), Var("r"), Var("s")

CA = parse_schema("CA", "(A>C)&(B>C)->(A|B>C)")
ID = parse_schema("ID", "A>A")
CSO = parse_schema("CSO", "(A>B)&(B>A)->((A>C)<->(B>C))")
MOD = parse_schema("MOD", "(A>~A)->(B>~A)")

LEAVES = [p, q, r, MetaVar("A"), MetaVar("B")]


def _random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(LEAVES)
    if rng.random() < 0.2:
        return Not(_random_formula(rng, depth - 1))
    connective = rng.choice([And, Or, Cond, Imp, Iff])
    return connective(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))


def _all_paths(f, path=()):
    yield path
    if isinstance(f, Not):
        yield from _all_paths(f.operand, path + (ONLY,))
    elif not isinstance(f, (Var, MetaVar)):
        yield from _all_paths(f.left, path + (LEFT,))
        yield from _all_paths(f.right, path + (RIGHT,))


class TestParse:
    """Test cases for parse"""

    def test_parse_conditional(self):
        """Test the smallest conditional"""
        assert parse("p>p") == Cond(p, p)

    def test_parse_schema_metavariables(self):
        """Test that uppercase letters become metavariables"""
        f = parse("(A>C)&(B>C)->(A|B>C)")
        a, b, c = MetaVar("A"), MetaVar("B"), MetaVar("C")
        assert f == Imp(And(Cond(a, c), Cond(b, c)), Cond(Or(a, b), c))
        assert metavariables(f) == ("A", "C", "B")
        assert CA.metavars == ("A", "B", "C")

    def test_precedence(self):
        """Test that ~ binds tighter than & and & tighter than |"""
        assert parse("~p & q | r") == Or(And(Not(p), q), r)
        assert parse("p|q>r") == Cond(Or(p, q), r)
        assert parse("p>q->r>s") == Imp(Cond(p, q), Cond(r, s))
        assert parse("p->q<->r") == Iff(Imp(p, q), r)

    def test_left_associative_conjunction(self):
        """Test that & and | group to the left"""
        assert parse("p&q&r") == And(And(p, q), r)
        assert parse("p|q|r") == Or(Or(p, q), r)

    @pytest.mark.parametrize("text", ["p>q>r", "p->q->r", "p<->q<->r"])
    def test_non_associative_chain(self, text):
        """Test that unbracketed chains of non-associative connectives are rejected"""
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    @pytest.mark.parametrize("text", ["", "p&", "(p>q", "p q", "p$q"])
    def test_syntax_errors(self, text):
        """Test malformed input"""
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_syntax_error_is_value_error(self):
        """Test that callers catching ValueError see syntax errors"""
        with pytest.raises(ValueError):
            parse("p >")

    def test_whitespace_ignored(self):
        """Test that spacing does not change the tree"""
        assert parse(" ( p >  q ) & r ") == parse("(p>q)&r")


class TestRender:
    """Test cases for render"""

    def test_render_basic(self):
        """Test rendering of simple formulas"""
        assert render(Cond(p, p)) == "p>p"
        assert render(CA.body) == "(A>C)&(B>C)->(A|B>C)"

    def test_right_nested_conjunction_is_bracketed(self):
        """Test that a right-nested & keeps its brackets"""
        assert render(And(p, And(q, r))) == "p&(q&r)"
        assert render(And(And(p, q), r)) == "p&q&r"

    def test_conditional_operands_bracketed(self):
        """Test that >, -> and <-> operands of a binary connective are always bracketed"""
        assert render(Or(Cond(p, q), r)) == "(p>q)|r"
        assert render(Cond(p, Imp(q, r))) == "p>(q->r)"
        assert render(Not(Cond(p, q))) == "~(p>q)"

    def test_unicode(self):
        """Test output-only unicode symbols"""
        assert render(And(Not(p), q), unicode=True) == "¬p ∧ q"
        assert render(Cond(p, q), unicode=True) == "p > q"

    @pytest.mark.parametrize("text", [
        "(A>C)&(B>C)->(A|B>C)",
        "(A>~B)|((A&B>C)<->(A>(B->C)))",
        "(A|B>A)|(A|B>B)|((A|B>C)<->(A>C)&(B>C))",
        "~(s>(p&q))",
        "~~p|(q->r)",
    ])
    def test_render_parse_stable(self, text):
        """Test that printing re-parses to the same tree"""
        f = parse(text)
        assert parse(render(f)) == f
        assert render(parse(render(f))) == render(f)

    def test_random_formulas_reparse(self):
        """Test parse(render(f)) == f on seeded random trees"""
        rng = random.Random(11)
        for _ in range(500):
            f = _random_formula(rng, 4)
            assert parse(render(f)) == f, render(f)


class TestMatching:
    """Test cases for match_schema, match_all and instantiate"""

    def test_match_single_metavariable(self):
        """Test ID against a compound antecedent"""
        assert match_schema(ID, parse("(p&q)>(p&q)")) == {"A": And(p, q)}

    def test_match_inconsistent(self):
        """Test that one metavariable cannot take two values"""
        assert match_schema(ID, parse("p>q")) is None

    def test_match_ca(self):
        """Test matching CA and instantiating back"""
        f = parse("(p>r)&(q>r)->((p|q)>r)")
        sigma = match_schema(CA, f)
        assert sigma == {"A": p, "B": q, "C": r}
        assert instantiate(CA, sigma) == f

    def test_match_structure_mismatch(self):
        """Test that a Boolean mismatch fails"""
        assert match_schema(CA, parse("(p>r)|(q>r)->((p|q)>r)")) is None

    def test_match_all_shared_substitution(self):
        """Test matching premise and conclusion patterns together"""
        patterns = [parse("A<->B"), parse("(A>C)<->(B>C)")]
        good = [parse("p&q<->q&p"), parse("(p&q>r)<->(q&p>r)")]
        bad = [parse("p&q<->q&p"), parse("(p&q>r)<->(p>r)")]
        assert match_all(patterns, good) == {"A": And(p, q), "B": And(q, p), "C": r}
        assert match_all(patterns, bad) is None
        assert match_all(patterns, good[:1]) is None

    def test_instantiate_cso(self):
        """Test CSO under A:=p, B:=q, C:=r"""
        f = instantiate(CSO, {"A": p, "B": q, "C": r})
        assert render(f) == "(p>q)&(q>p)->((p>r)<->(q>r))"

    def test_instantiate_mod(self):
        """Test MOD under A:=p, B:=q"""
        assert render(instantiate(MOD, {"A": p, "B": q})) == "(p>~p)->(q>~p)"

    def test_instantiate_compound(self):
        """Test ID with a conjunction substituted"""
        f = instantiate(ID, {"A": And(p, q)})
        assert f == parse("(p&q)>(p&q)")
        assert render(f) == "p&q>p&q"

    def test_instantiate_missing_binding(self):
        """Test that an unbound metavariable is an error"""
        with pytest.raises(SubstitutionError):
            instantiate(CSO, {"A": p, "B": q})


class TestPaths:
    """Test cases for sub_at, replace_at and occurrences"""

    def test_replace_antecedent(self):
        """Test replacing the left operand of a conditional"""
        assert render(replace_at(parse("p>q"), (LEFT,), parse("q&p"))) == "q&p>q"

    def test_replace_under_negation(self):
        """Test a path through a negation"""
        host = parse("~(s>(p&q))")
        assert render(replace_at(host, (ONLY, RIGHT), parse("q&p"))) == "~(s>q&p)"

    def test_replace_root(self):
        """Test that the empty path replaces the whole formula"""
        assert replace_at(p, (), parse("q|r")) == Or(q, r)

    def test_replace_changes_only_addressed_occurrence(self):
        """Test that other occurrences are untouched"""
        host = parse("(p>q)&(p>r)")
        assert replace_at(host, (LEFT, LEFT), s) == parse("(s>q)&(p>r)")

    def test_invalid_path(self):
        """Test that a path off the tree is rejected"""
        with pytest.raises(PathError):
            replace_at(p, (LEFT,), q)
        with pytest.raises(PathError):
            sub_at(parse("~p"), (LEFT,))

    def test_occurrences_and_replace_all(self):
        """Test that occurrences feed replace_all_at"""
        host = parse("(p&q>r)&~(p&q)")
        paths = occurrences(host, And(p, q))
        assert paths == [(LEFT, LEFT), (RIGHT, ONLY)]
        assert sub_at(host, paths[1]) == And(p, q)
        assert replace_all_at(host, paths, s) == parse("(s>r)&~s")

    def test_replace_with_own_subformula_is_identity(self):
        """Test replace_at(h, path, sub_at(h, path)) == h at every path of random hosts"""
        rng = random.Random(13)
        for _ in range(200):
            host = _random_formula(rng, 4)
            for path in _all_paths(host):
                assert replace_at(host, path, sub_at(host, path)) == host

    def test_occurrences_address_target(self):
        """Test that every reported occurrence addresses the target"""
        rng = random.Random(17)
        for _ in range(200):
            host = _random_formula(rng, 4)
            target = sub_at(host, rng.choice(list(_all_paths(host))))
            paths = occurrences(host, target)
            assert paths
            assert all(sub_at(host, path) == target for path in paths)


class TestModalAtoms:
    """Test cases for modal atoms and other structural queries"""

    def test_conditional_is_atom(self):
        """Test that a conditional is one atom"""
        assert modal_atoms(parse("p>q")) == {Cond(p, q)}

    def test_atoms_of_cso_instance(self):
        """Test that Boolean structure is looked through"""
        f = parse("(p>q)&(q>p)->((p>r)<->(q>r))")
        assert modal_atoms(f) == {Cond(p, q), Cond(q, p), Cond(p, r), Cond(q, r)}

    def test_atoms_of_boolean_formula(self):
        """Test that plain variables are atoms"""
        assert modal_atoms(parse("~p|q")) == {p, q}

    def test_atom_list_order(self):
        """Test first-occurrence order across several formulas"""
        atoms = modal_atom_list([parse("(r>s)|p"), parse("p&(p>q)")])
        assert atoms == [Cond(r, s), p, Cond(p, q)]

    @pytest.mark.parametrize("connective", [And, Or, Imp, Iff])
    def test_atoms_of_boolean_combination_are_the_union(self, connective):
        """Test modal_atoms(f op g) == modal_atoms(f) | modal_atoms(g) on random formulas"""
        rng = random.Random(19)
        for _ in range(200):
            f, g = _random_formula(rng, 3), _random_formula(rng, 3)
            assert modal_atoms(connective(f, g)) == modal_atoms(f) | modal_atoms(g)
            assert modal_atoms(Not(f)) == modal_atoms(f)

    def test_conditional_atoms_stop_at_the_conditional(self):
        """Test that a conditional hides the atoms below it"""
        rng = random.Random(23)
        for _ in range(100):
            f, g = _random_formula(rng, 3), _random_formula(rng, 3)
            assert modal_atoms(Cond(f, g)) == {Cond(f, g)}

    def test_structure_queries(self):
        """Test variables, depth and conjoin"""
        f = parse("(q>(p>r))&p")
        assert variables(f) == ("q", "p", "r")
        assert conditional_depth(f) == 2
        assert conditional_depth(p) == 0
        assert conjoin([p, q, r]) == And(And(p, q), r)
        with pytest.raises(ValueError):
            conjoin([])
