"""
Tests for selection frames, truth sets, frame conditions, validity and correspondence
"""

import pytest
import json
import shutil
import sys
import tempfile
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from condlogic.formula import Cond, Schema, Var, conjoin, parse, parse_schema
from condlogic.proofkernel import RuleSpec
from condlogic.semantics import (
    FrameLoadError, Model, SelectionFrame, UnboundVariableError, Witness, builtin_frame,
    check_condition, correspondence_check, enumerate_frames, formula_valid_on_frame,
    load_frame, parse_condition_list, rule_preserved_on_frame, save_frame,
    schema_valid_on_frame, truth_set, witness_holds,
)

VCN_AXIOMS = {
    "ID": "A>A",
    "CM": "(A>B&C)->(A>B)&(A>C)",
    "CC": "(A>B)&(A>C)->(A>B&C)",
    "CV": "(A>C)&~(A>~B)->(A&B>C)",
    "MOD'": "(~A>A)->(B>A)",
    "CSO": "(A>B)&(B>A)->((A>C)<->(B>C))",
    "CMP": "(A>B)->(A->B)",
    "CS": "A&B->(A>B)",
}

CA = parse_schema("CA", "(A>C)&(B>C)->(A|B>C)")
MOD = parse_schema("MOD", "(A>~A)->(B>~A)")


def _rule(name, premises, conclusion):
    return RuleSpec(name=name, premises=tuple(parse(p) for p in premises),
                    conclusion=parse(conclusion))


@pytest.fixture
def lewis_g():
    return builtin_frame("lewis-g")


@pytest.fixture
def temp_dir():
    """Create a temporary directory for frame files"""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


class TestSelectionFrame:
    """Test cases for SelectionFrame and the built-in frames"""

    def test_lewis_g_selection(self, lewis_g):
        """Test the entries the CA counterexample rests on"""
        assert lewis_g.size == 4
        assert lewis_g.selection("0", ["1", "2"]) == {"1"}
        assert lewis_g.selection("0", ["1", "3"]) == {"1", "3"}
        assert lewis_g.selection("0", ["1", "2", "3"]) == {"1", "2", "3"}
        assert lewis_g.selection("2", ["1", "2"]) == {"2"}
        assert lewis_g.selection("3", ["1", "2"]) == {"1", "2"}

    def test_material_frame(self):
        """Test g(i,X) = {i} ∩ X"""
        frame = builtin_frame("material-2")
        assert frame.selection("0", ["0", "1"]) == {"0"}
        assert frame.selection("0", ["1"]) == frozenset()

    def test_unknown_builtin(self):
        """Test unknown names and sizes"""
        with pytest.raises(FrameLoadError):
            builtin_frame("nonsense")
        with pytest.raises(FrameLoadError):
            builtin_frame("identity-9")

    def test_table_shape_checked(self):
        """Test that a short selection table is rejected"""
        with pytest.raises(FrameLoadError):
            SelectionFrame(worlds=("0", "1"), table=((0, 0), (0, 0)))

    def test_save_and_load(self, temp_dir, lewis_g):
        """Test writing a frame as JSON and reading it back"""
        path = save_frame(lewis_g, temp_dir / "g.json", extra={"note": "copy"})
        loaded = load_frame(path)
        assert loaded.table == lewis_g.table
        assert loaded.worlds == lewis_g.worlds
        assert json.loads(path.read_text())["note"] == "copy"
        assert load_frame("builtin:lewis-g").table == lewis_g.table

    def test_load_missing_entry(self, temp_dir):
        """Test that every (world, subset) pair must be listed"""
        data = builtin_frame("material-1").to_dict()
        data["selection"] = data["selection"][:-1]
        path = temp_dir / "short.json"
        path.write_text(json.dumps(data))
        with pytest.raises(FrameLoadError):
            load_frame(path)


class TestTruthSets:
    """Test cases for truth_set"""

    def test_conditional_truth_set(self, lewis_g):
        """Test [p>q] with [p]={1,2} and [q]={1,3}"""
        model = Model(lewis_g, {"p": frozenset({"1", "2"}), "q": frozenset({"1", "3"})})
        assert truth_set(model, Cond(Var("p"), Var("q"))) == {"0", "1"}

    def test_boolean_clauses(self, lewis_g):
        """Test the Boolean truth-set clauses"""
        model = Model(lewis_g, {"p": frozenset({"1", "2"}), "q": frozenset({"1", "3"})})
        assert truth_set(model, parse("~p")) == {"0", "3"}
        assert truth_set(model, parse("p&q")) == {"1"}
        assert truth_set(model, parse("p|q")) == {"1", "2", "3"}
        assert truth_set(model, parse("p->q")) == {"0", "1", "3"}
        assert truth_set(model, parse("p<->q")) == {"0", "1"}

    def test_unbound_variable(self, lewis_g):
        """Test that a variable without a valuation is an error"""
        model = Model(lewis_g, {"p": frozenset({"1"})})
        with pytest.raises(UnboundVariableError):
            truth_set(model, parse("p>r"))

    def test_valuation_outside_worlds(self, lewis_g):
        """Test that a valuation must stay inside the world set"""
        with pytest.raises(ValueError):
            Model(lewis_g, {"p": frozenset({"7"})})


class TestConditions:
    """Test cases for check_condition"""

    @pytest.mark.parametrize("name", ["id", "mod", "cv", "cso", "cent", "mod_prime"])
    def test_lewis_g_conditions_hold(self, lewis_g, name):
        """Test that the reference frame meets its conditions"""
        assert check_condition(lewis_g, name) is True

    def test_lewis_g_fails_ca(self, lewis_g):
        """Test that (ca) fails at world 0"""
        witness = check_condition(lewis_g, "ca")
        assert isinstance(witness, Witness)
        assert witness.world == "0"
        assert witness.subject == "(ca)"
        assert "X∪Y" in witness.detail

    def test_identity_frame_fails_cent(self):
        """Test the first (cent) failure on the identity frame"""
        witness = check_condition(builtin_frame("identity-2"), "cent")
        assert isinstance(witness, Witness)
        assert witness.world == "0"
        assert witness.assignment["X"] == {"0", "1"}

    def test_material_frame_conditions(self):
        """Test that the material frame is centred and closed under union"""
        frame = builtin_frame("material-2")
        for name in ("id", "cent", "ca", "sda"):
            assert check_condition(frame, name) is True

    def test_parse_condition_list(self):
        """Test splitting and checking condition names"""
        assert parse_condition_list("id, mod,cv") == ["id", "mod", "cv"]
        with pytest.raises(ValueError):
            parse_condition_list("id,bogus")


class TestValidity:
    """Test cases for schema and formula validity on frames"""

    @pytest.mark.parametrize("name", sorted(VCN_AXIOMS))
    def test_vcn_axioms_valid_on_lewis_g(self, lewis_g, name):
        """Test that every VCn axiom holds on the reference frame"""
        assert schema_valid_on_frame(lewis_g, parse_schema(name, VCN_AXIOMS[name])) is True

    def test_ca_invalid_on_lewis_g(self, lewis_g):
        """Test that CA fails and the returned witness re-checks"""
        witness = schema_valid_on_frame(lewis_g, CA)
        assert isinstance(witness, Witness)
        assert witness.subject == "CA"
        assert witness_holds(lewis_g, CA, witness)

    def test_first_ca_witness_in_binary_order(self, lewis_g):
        """Test the exact witness binary-counting order reaches first on the reference frame"""
        assert schema_valid_on_frame(lewis_g, CA) == Witness(world="0", subject="CA", assignment={
            "A": frozenset({"1", "2"}), "B": frozenset({"3"}), "C": frozenset({"1", "3"}),
        })

    def test_recorded_ca_witness(self, lewis_g):
        """Test the witness A={1,2}, B={1,3}, C={1,3} at world 0"""
        witness = Witness(world="0", subject="CA", assignment={
            "A": frozenset({"1", "2"}), "B": frozenset({"1", "3"}), "C": frozenset({"1", "3"}),
        })
        assert witness_holds(lewis_g, CA, witness)
        moved = Witness(world="1", subject="CA", assignment=witness.assignment)
        assert not witness_holds(lewis_g, CA, moved)
        wider = Witness(world="0", subject="CA", assignment={
            "A": frozenset({"1", "2"}), "B": frozenset({"1", "3"}),
            "C": frozenset({"1", "2", "3"}),
        })
        assert not witness_holds(lewis_g, CA, wider)

    def test_formula_validity(self, lewis_g):
        """Test validity of object-language formulas"""
        assert formula_valid_on_frame(lewis_g, parse("p>p")) is True
        witness = formula_valid_on_frame(lewis_g, parse("p>q"))
        assert isinstance(witness, Witness)
        assert set(witness.assignment) == {"p", "q"}
        with pytest.raises(ValueError):
            formula_valid_on_frame(lewis_g, parse("A>A"))

    def test_single_world_material_frame(self):
        """Test that every VCn axiom holds on the one-world centred frame"""
        frame = builtin_frame("material-1")
        for name, text in VCN_AXIOMS.items():
            assert schema_valid_on_frame(frame, parse_schema(name, text)) is True

    @pytest.mark.parametrize("rule", [
        _rule("RCEC", ["A<->B"], "(C>A)<->(C>B)"),
        _rule("RCK", ["B&C->D"], "(A>B)&(A>C)->(A>D)"),
        _rule("RCE", ["A->B"], "A>B"),
    ])
    def test_rules_preserved_on_lewis_g(self, lewis_g, rule):
        """Test subset-level rule preservation"""
        assert rule_preserved_on_frame(lewis_g, rule) is True

    def test_rce_not_preserved_without_id(self):
        """Test RCE on a frame that selects outside the antecedent"""
        frame = SelectionFrame(worlds=("0",), table=((1, 1),))
        witness = rule_preserved_on_frame(frame, _rule("RCE", ["A->B"], "A>B"))
        assert isinstance(witness, Witness)


class TestCorrespondence:
    """Test cases for correspondence_check"""

    def test_enumerate_frames(self):
        """Test the number of one-world frames"""
        assert len(list(enumerate_frames(1))) == 4
        assert len(list(enumerate_frames(1, restrict_id=True))) == 2

    def test_enumerate_centred_frames(self):
        """Test that centring fixes every selection from a set holding its world"""
        frames = list(enumerate_frames(3, restrict_id=True, centred=True))
        assert len(frames) == 4096
        assert len(list(enumerate_frames(2, restrict_id=True, centred=True))) == 4
        assert all(check_condition(f, "cent") is True and check_condition(f, "id") is True
                   for f in frames[::97])

    def test_id_size_one(self):
        """Test (id) against ID on all one-world frames"""
        report = correspondence_check(1, "id", parse_schema("ID", "A>A"))
        assert report.ok
        assert report.mode == "exhaustive"
        assert report.frames_checked == 4
        assert report.condition_frames == 2

    def test_mod_given_id(self):
        """Test (mod) against MOD over frames satisfying (id)"""
        report = correspondence_check(2, "mod", MOD, background=["id"])
        assert report.ok
        assert report.frames_checked == 256

    def test_mod_prime_given_id(self):
        """Test (mod_prime) against MOD' over frames satisfying (id)"""
        report = correspondence_check(2, "mod_prime", parse_schema("MOD'", "(~A>A)->(B>A)"),
                                      background=["id"])
        assert report.ok

    def test_mod_needs_id(self):
        """Test that (mod) and MOD come apart once selections may leave X"""
        report = correspondence_check(2, "mod", MOD, max_violations=1)
        assert not report.ok
        violation = report.violations[0]
        assert violation.condition_holds and not violation.schema_valid
        assert witness_holds(violation.frame, MOD, violation.witness)

    def test_cent_against_cs_and_cmp(self):
        """Test (cent) against the conjunction CS & CMP"""
        schema = Schema(name="CS&CMP", body=conjoin([parse("A&B->(A>B)"), parse("(A>B)->(A->B)")]))
        assert correspondence_check(1, "cent", schema).ok
        assert correspondence_check(2, "cent", schema).ok

    def test_ca_size_two(self):
        """Test (ca) against CA on every two-world frame"""
        report = correspondence_check(2, "ca", CA)
        assert report.ok
        assert report.frames_checked == 4 ** 8

    def test_sampled_size_three(self):
        """Test seeded sampling above the exhaustive limit"""
        first = correspondence_check(3, "ca", CA, samples=20, seed=3)
        second = correspondence_check(3, "ca", CA, samples=20, seed=3)
        assert first.ok
        assert first.mode == "sampled(20, seed=3)"
        assert first.condition_frames == second.condition_frames

    def test_size_limits(self):
        """Test that large exhaustive runs and bad sizes are refused"""
        with pytest.raises(ValueError):
            correspondence_check(3, "ca", CA)
        with pytest.raises(ValueError):
            correspondence_check(6, "ca", CA, samples=1)
        with pytest.raises(ValueError):
            correspondence_check(1, "bogus", CA)
