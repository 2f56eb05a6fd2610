"""
Tests for the countermodel search
"""

import pytest
import shutil
import sys
import tempfile
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from condlogic.formula import parse_schema
from condlogic.modelsearch import (
    BudgetExceeded, Exhausted, Found, SearchSpec, enumerate_countermodels, find_countermodel,
    verify_countermodel,
)
from condlogic.semantics import builtin_frame, load_frame, witness_holds

CA = parse_schema("CA", "(A>C)&(B>C)->(A|B>C)")
LEWIS_CONDITIONS = ("id", "mod", "cv", "cso", "cent")


@pytest.fixture(scope="module")
def size_four_outcome():
    """The seeded search the reference frame guarantees a result for"""
    return find_countermodel(SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=4,
                                        budget=5_000_000, seed=7))


@pytest.fixture
def temp_dir():
    """Create a temporary directory for countermodel files"""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


class TestSearchSpec:
    """Test cases for SearchSpec validation"""

    def test_bad_budget(self):
        """Test that the budget must be positive"""
        with pytest.raises(ValueError):
            SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=2, budget=0)

    def test_bad_size(self):
        """Test that frame sizes are capped"""
        with pytest.raises(ValueError):
            SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=6, budget=10)

    def test_unknown_condition(self):
        """Test that condition names are checked"""
        with pytest.raises(ValueError):
            SearchSpec(("id", "bogus"), CA, max_worlds=2, budget=10)


class TestVerifyCountermodel:
    """Test cases for verify_countermodel"""

    def test_lewis_g_is_a_countermodel(self):
        """Test the reference frame against CA"""
        verdict = verify_countermodel(builtin_frame("lewis-g"), LEWIS_CONDITIONS, CA)
        assert verdict.ok
        assert witness_holds(builtin_frame("lewis-g"), CA, verdict.witness)

    def test_condition_failure_reported(self):
        """Test that asking for (ca) as well rules the frame out"""
        verdict = verify_countermodel(builtin_frame("lewis-g"), LEWIS_CONDITIONS + ("ca",), CA)
        assert not verdict
        assert verdict.reasons[0].startswith("condition ca fails")

    def test_target_valid(self):
        """Test that CA holds on the material frame"""
        verdict = verify_countermodel(builtin_frame("material-2"), ("id", "cent"), CA)
        assert verdict.reasons == ["target valid"]


class TestFindCountermodel:
    """Test cases for find_countermodel"""

    def test_exhausted_on_one_world(self):
        """Test that one-world frames meeting the conditions all validate CA"""
        outcome = find_countermodel(SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=1, budget=10_000))
        assert isinstance(outcome, Exhausted)
        assert outcome.to_dict()["status"] == "exhausted"

    def test_exhausted_up_to_three_worlds(self):
        """Test that no countermodel has fewer than four worlds"""
        outcome = find_countermodel(SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=3,
                                               budget=5_000_000))
        assert isinstance(outcome, Exhausted)

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_no_small_countermodel_by_enumeration(self, size):
        """Test every centred frame of up to three worlds against CA, without pruning"""
        assert list(enumerate_countermodels(LEWIS_CONDITIONS, CA, size)) == []

    def test_found_on_four_worlds(self, size_four_outcome):
        """Test the seeded search at four worlds"""
        outcome = size_four_outcome
        assert isinstance(outcome, Found)
        assert outcome.size == 4
        assert verify_countermodel(outcome.frame, LEWIS_CONDITIONS, CA).ok
        assert witness_holds(outcome.frame, CA, outcome.witness)
        assert outcome.nodes <= 5_000_000

    def test_found_saved(self, size_four_outcome, temp_dir):
        """Test writing the countermodel as a frame file"""
        path = temp_dir / "countermodel.json"
        size_four_outcome.save(path)
        frame = load_frame(path)
        assert frame.table == size_four_outcome.frame.table
        assert verify_countermodel(frame, LEWIS_CONDITIONS, CA).ok

    def test_budget_exceeded(self):
        """Test an immediate cutoff"""
        outcome = find_countermodel(SearchSpec(LEWIS_CONDITIONS, CA, max_worlds=4, budget=1))
        assert isinstance(outcome, BudgetExceeded)
        assert outcome.nodes == 1
        assert outcome.status == "budget_exceeded"

    def test_deterministic_for_seed(self):
        """Test that the same seed gives the same frame"""
        spec = SearchSpec(("id",), CA, max_worlds=3, budget=100_000, seed=3)
        first, second = find_countermodel(spec), find_countermodel(spec)
        assert isinstance(first, Found)
        assert first.frame.table == second.frame.table
        assert first.nodes == second.nodes
        assert first.size == 2

    @pytest.mark.parametrize("conditions", [
        ("id",),
        ("id", "cent"),
        ("id", "mod", "cso"),
        ("id", "cv"),
    ])
    def test_agrees_with_brute_force(self, conditions):
        """Test the pruned search against unpruned enumeration on small frames"""
        brute = {
            size: [f.table for f in enumerate_countermodels(conditions, CA, size)]
            for size in (1, 2)
        }
        outcome = find_countermodel(SearchSpec(conditions, CA, max_worlds=2, budget=1_000_000))
        if brute[1] or brute[2]:
            assert isinstance(outcome, Found)
            expected_size = 1 if brute[1] else 2
            assert outcome.size == expected_size
            assert outcome.frame.table in brute[expected_size]
        else:
            assert isinstance(outcome, Exhausted)
