"""
Tests for the domain models.

Tests cover:
- Multigraph validation (stopping, sinks, rotor orders)
- Path multigraph construction and arc labels
- PathInstance constants d_k, F, h
- EngelMachine construction and DigitWord parsing
"""

import pytest

from rotor_arrival.core.exceptions import (
    DimensionMismatchError,
    EmptyRotorOrderError,
    IndexOutOfRangeError,
    InvalidInstanceError,
    InvalidMultigraphError,
    NonStoppingError,
    SchemaError,
    SinkVertexError,
    SinkWithOutArcError,
)
from rotor_arrival.models import (
    DigitWord,
    EngelMachine,
    Multigraph,
    ParticleConfig,
    PathInstance,
    path_multigraph,
)


@pytest.mark.unit
class TestMultigraphBuild:
    """Test Multigraph.build validation."""

    def test_smallest_path_is_valid(self):
        graph = path_multigraph(1, 1, 1)

        assert graph.vertex_count == 3
        assert graph.sinks == frozenset({0, 2})
        assert graph.non_sinks == (1,)
        assert graph.order_heads[1] == (2, 0)

    def test_path_233_has_outdegree_five(self):
        graph = path_multigraph(3, 2, 3)

        assert [graph.out_degree(u) for u in graph.non_sinks] == [5, 5, 5]
        assert graph.arc_count == 15

    def test_isolated_two_cycle_is_not_stopping(self):
        with pytest.raises(NonStoppingError) as exc_info:
            Multigraph.build(3, [2], [(0, 1), (1, 0)], {0: [0], 1: [1]})

        assert exc_info.value.vertices == [0, 1]

    def test_sink_with_out_arc(self):
        with pytest.raises(SinkWithOutArcError):
            Multigraph.build(2, [0], [(0, 1), (1, 0)], {1: [1]})

    def test_empty_rotor_order(self):
        with pytest.raises(EmptyRotorOrderError):
            Multigraph.build(2, [0], [], {})

    def test_rotor_order_must_permute_out_arcs(self):
        with pytest.raises(InvalidMultigraphError):
            Multigraph.build(3, [0, 2], [(1, 0), (1, 2)], {1: [0, 0]})

    def test_vertex_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            Multigraph.build(2, [0], [(1, 5)], {1: [0]})

    def test_require_non_sink(self):
        graph = path_multigraph(1, 1, 1)

        with pytest.raises(SinkVertexError):
            graph.require_non_sink(0)

    def test_zero_interior_path_is_accepted(self):
        graph = path_multigraph(0, 2, 3)

        assert graph.non_sinks == ()
        assert graph.sinks == frozenset({0, 1})


@pytest.mark.unit
class TestParticleConfig:
    """Test particle configuration arithmetic."""

    def test_degree(self):
        assert ParticleConfig.of([-8, 5, 13, -5, 12]).degree == 17

    def test_addition_and_negation(self):
        a = ParticleConfig.of([1, 2, 3])
        b = ParticleConfig.of([0, -2, 5])

        assert (a + b).values == (1, 0, 8)
        assert (a - b).values == (1, 4, -2)
        assert (-a).values == (-1, -2, -3)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            ParticleConfig.of([1, 2]) + ParticleConfig.of([1, 2, 3])


@pytest.mark.unit
class TestPathInstance:
    """Test PathInstance constants and conversions."""

    def test_harmonic_table_233(self, path_233):
        assert path_233.d == (8, 12, 18, 27)
        assert path_233.h_table == (0, 8, 20, 38, 65)
        assert path_233.F == 65

    def test_unit_instance(self, path_113):
        assert path_113.is_unit
        assert path_113.h_table == (0, 1, 2, 3, 4)
        assert path_113.F == 4

    def test_max_g_below_x_times_f(self, path_233):
        assert path_233.max_g == 2 * (12 + 18 + 27)
        assert path_233.max_g < path_233.x * path_233.F

    @pytest.mark.parametrize("x,y", [(2, 4), (3, 2), (0, 3), (3, 3)])
    def test_rejects_non_solver_parameters(self, x, y):
        with pytest.raises(InvalidInstanceError):
            PathInstance.coprime(3, x, y)

    def test_from_parameters_dispatch(self):
        assert PathInstance.from_parameters(2, 1, 1).is_unit
        assert not PathInstance.from_parameters(2, 1, 2).is_unit

    def test_arc_labels(self, path_233):
        assert path_233.arc_id(2, 3) == 8
        assert path_233.arc_label(8) == (2, 3)
        assert path_233.graph.arc_heads[path_233.arc_id(2, 1)] == 3
        assert path_233.graph.arc_heads[path_233.arc_id(2, 2)] == 1

    def test_rotor_labels_round_trip(self, path_233):
        rotor = path_233.rotor_from_labels([4, 0, 2])

        assert rotor.positions == (0, 4, 0, 2, 0)
        assert path_233.labels_of(rotor) == (4, 0, 2)

    def test_label_out_of_range(self, path_233):
        with pytest.raises(IndexOutOfRangeError):
            path_233.rotor_from_labels([0, 5, 0])

    def test_particles_dimension(self, path_233):
        with pytest.raises(DimensionMismatchError):
            path_233.particles([1, 2, 3])


@pytest.mark.unit
class TestEngelMachine:
    """Test Engel machine parameters and digit words."""

    def test_constants(self):
        machine = EngelMachine.for_parameters(3, 2, 3)

        assert machine.d == (8, 12, 18, 27)
        assert machine.y_power == 81
        assert machine.F == 65
        assert machine.word_length == 5

    def test_inverses(self):
        machine = EngelMachine.for_parameters(3, 2, 3)

        for power, inverse in zip(machine.x_powers, machine.x_power_inverses):
            assert power * inverse % 3 == 1

    def test_requires_x_below_y(self):
        with pytest.raises(InvalidInstanceError):
            EngelMachine.for_parameters(3, 3, 2)

    def test_multigraph(self):
        graph = EngelMachine.for_parameters(3, 2, 3).multigraph()

        assert graph.vertex_count == 6
        assert graph.sinks == frozenset({4, 5})
        assert graph.order_heads[0] == (1, 1, 5)

    def test_parse_and_print(self):
        word = DigitWord.parse("(2, 1, 0, 2, -2)")

        assert word.digits == (2, 1, 0, 2, -2)
        assert str(word) == "(2,1,0,2,-2)"
        assert word.last == -2

    def test_parse_rejects_garbage(self):
        with pytest.raises(SchemaError):
            DigitWord.parse("2,1,0")

    def test_is_stable(self):
        assert DigitWord.of([2, 1, 0, 2, -2]).is_stable(2, 3)
        assert not DigitWord.of([3, 1, 0, 2, 0]).is_stable(2, 3)
        assert not DigitWord.of([0, 0, 0, 0, 1]).is_stable(2, 3)
