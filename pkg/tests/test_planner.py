import random
import threading
from fractions import Fraction as F

import pytest

from circleconf import planner
from circleconf.baut import baut_equal, baut_identity, generator, star_embed
from circleconf.braid import BraidWord
from circleconf.canonical import kappa_of_tree
from circleconf.errors import DifferentComponentError, NotIsomorphicError, TypeMismatchError
from circleconf.forest import labeled_from_shape, labeled_trees_isomorphic, subtree, tree_of_configuration
from circleconf.generators import fixed_star, random_config, random_labeled_tree, realize
from circleconf.geometry import Circle, LabeledConfiguration
from circleconf.motion import concat, concat_all, crossing_events, monodromy, reverse, validate_path
from circleconf.planner import (
    make_generator_loop, plan_between, plan_to_canonical, reference_events, reference_identification,
)

from conftest import BIG_TREE, ISO_A, ISO_B


def assert_good(p):
    assert validate_path(p).ok
    crossing_events(p)  # raises if not generic


def test_concentric_pair_goes_to_chain():
    c = LabeledConfiguration([Circle(0, 0, 1), Circle(0, 0, 2)])
    p = plan_to_canonical(c)
    assert_good(p)
    assert p.start == c
    assert p.end[2] == Circle(0, 0, F(1, 3)) and p.end[1] == Circle(0, 0, F(1, 9))


def test_seven_circles_plan_to_fixed_configuration(seven_config):
    p = plan_to_canonical(seven_config)
    assert_good(p)
    assert p.end == kappa_of_tree(tree_of_configuration(seven_config))


def test_random_configurations_plan_validly():
    rng = random.Random(1)
    for _ in range(25):
        c = random_config(rng.randint(0, 8), rng)
        p = plan_to_canonical(c)
        assert_good(p)
        assert p.start == c and p.end == kappa_of_tree(tree_of_configuration(c))


def test_between_sample_trees(three_labeled_trees):
    t1, t2, t3 = three_labeled_trees
    p = plan_between(kappa_of_tree(t1), kappa_of_tree(t2))
    assert_good(p)
    assert p.end == kappa_of_tree(t2)
    with pytest.raises(DifferentComponentError):
        plan_between(kappa_of_tree(t1), kappa_of_tree(t3))
    q = plan_between(kappa_of_tree(t1), kappa_of_tree(t3), labeled=False)
    assert_good(q)
    assert q.end.same_set(kappa_of_tree(t3))


def test_nested_and_unnested_pairs_are_different_components():
    nested = LabeledConfiguration([Circle(0, 0, 1), Circle(0, 0, 2)])
    apart = LabeledConfiguration([Circle(0, 0, 1), Circle(3, 0, 1)])
    for labeled in (True, False):
        with pytest.raises(DifferentComponentError):
            plan_between(nested, apart, labeled=labeled)
    with pytest.raises(DifferentComponentError):
        plan_between(apart, LabeledConfiguration([Circle(0, 0, 1)]))


def test_plan_between_random_pairs():
    rng = random.Random(2)
    for _ in range(40):
        t = random_labeled_tree(rng.randint(1, 6), rng)
        a = realize(t, rng)
        b = realize(t, rng) if rng.random() < 0.5 else random_config(t.n, rng)
        same = labeled_trees_isomorphic(tree_of_configuration(a), tree_of_configuration(b))
        if same:
            p = plan_between(a, b)
            assert_good(p)
            assert p.start == a and p.end == b
        else:
            with pytest.raises(DifferentComponentError):
                plan_between(a, b)


def test_generator_loop_examples():
    loop = make_generator_loop(fixed_star(2), (), 1)
    assert_good(loop)
    assert baut_equal(monodromy(loop), star_embed(BraidWord(2, (1,))))
    big = labeled_from_shape(BIG_TREE)
    swap = make_generator_loop(big, (), 1)
    assert_good(swap)
    assert [e.parent for e in crossing_events(swap)] == [None]
    assert baut_equal(monodromy(swap), generator(BIG_TREE, (), 1))
    with pytest.raises(TypeMismatchError):
        make_generator_loop(big, (0,), 2)
    with pytest.raises(ValueError):
        make_generator_loop(big, (0,), 3)


def test_generator_loops_map_to_generators():
    rng = random.Random(3)
    for _ in range(10):
        t = random_labeled_tree(rng.randint(2, 8), rng)
        for path in t.paths().values():
            kids = subtree(t.shape, path)
            for i in range(1, len(kids)):
                sign = rng.choice((1, -1))
                try:
                    loop = make_generator_loop(t, path, i, sign)
                except TypeMismatchError:
                    continue
                assert baut_equal(monodromy(loop), generator(t.shape, path, i, sign))


def test_generator_loop_with_differently_ordered_children():
    shape = ((((),), ()), ((), ((),)))
    t = labeled_from_shape(shape)
    loop = make_generator_loop(t, (), 1)
    assert_good(loop)
    assert loop.end.same_set(loop.start)
    assert baut_equal(monodromy(loop), generator(shape, (), 1))


def test_braid_relation_holds_for_generator_loops():
    for n in (3, 4):
        t = fixed_star(n)
        for i in range(1, n - 1):
            def seq(slots):
                out = make_generator_loop(t, (), slots[0])
                for s in slots[1:]:
                    out = concat(out, make_generator_loop(tree_of_configuration(out.end), (), s))
                return out
            lhs, rhs = seq((i, i + 1, i)), seq((i + 1, i, i + 1))
            assert baut_equal(monodromy(lhs), monodromy(rhs))


def test_round_trip_is_identity():
    rng = random.Random(4)
    for _ in range(15):
        t = random_labeled_tree(rng.randint(1, 8), rng)
        k = kappa_of_tree(t)
        c = realize(t, rng)
        loop = concat(plan_between(k, c), reverse(plan_between(k, c)))
        assert_good(loop)
        assert baut_equal(monodromy(loop), baut_identity(t.shape))


def test_reference_identification_examples():
    star = ((), ())
    const = reference_identification(star, star)
    assert len(const) == 1
    mixed_a, mixed_b = (((), ()), ()), ((), ((), ()))
    p = reference_identification(mixed_a, mixed_b)
    assert_good(p)
    assert p.start == kappa_of_tree(labeled_from_shape(mixed_a))
    assert p.end.same_set(kappa_of_tree(labeled_from_shape(mixed_b)))
    back = reference_identification(mixed_b, mixed_a)
    assert back.start.same_set(p.end) and back.end.same_set(p.start)
    with pytest.raises(NotIsomorphicError):
        reference_identification(star, ((),))


def test_reference_identification_large_isomorphic_pair():
    p = reference_identification(ISO_A, ISO_B)
    assert_good(p)
    assert p.end.same_set(kappa_of_tree(labeled_from_shape(ISO_B)))


def test_reference_cache_is_thread_safe():
    planner._reference_cache.clear()
    planner._events_cache.clear()
    results = []
    barrier = threading.Barrier(8)

    def work():
        barrier.wait()
        results.append((reference_identification(ISO_A, ISO_B), reference_events(ISO_A, ISO_B)))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len(results) == 8
    assert all(r[0] is results[0][0] for r in results)
    assert all(r[1] == results[0][1] for r in results)
    assert reference_identification(ISO_A, ISO_B) is results[0][0]


def test_planner_paths_concatenate():
    rng = random.Random(5)
    t = random_labeled_tree(5, rng)
    configs = [realize(t, rng) for _ in range(3)]
    legs = [plan_between(a, b) for a, b in zip(configs, configs[1:])]
    whole = concat_all(legs)
    assert_good(whole)
    assert whole.start == configs[0] and whole.end == configs[-1]
