import pytest

from fanchar.action import fixed_ray_indices, fixed_subcomplex, restrict_to_fixed, validate_action
from fanchar.corpus import ROT3, ROT4, product_of_lines, projective_plane
from fanchar.errors import NotFanAutomorphism, NotProper, NotUnimodular, OrderExceedsCap
from fanchar.exactalg import IntMatrix, divisors, fixed_subspace_dimension, vector_gcd
from fanchar.fan import Fan, complex_from_fan, complex_h_polynomial

PLANE = projective_plane()[1]
LINES = product_of_lines()[1]


class TestValidateAction:
    def test_projective_plane(self):
        action = validate_action(PLANE, ROT3)
        assert action.order == 3
        assert action.ray_perm == (1, 2, 0)

    def test_rotation(self):
        assert validate_action(LINES, ROT4).order == 4

    def test_reflection(self):
        action = validate_action(LINES, IntMatrix([[1, 0], [0, -1]]))
        assert action.order == 2
        assert fixed_ray_indices(action, 1) == [0, 1]

    def test_improper_swap(self):
        with pytest.raises(NotProper) as exc:
            validate_action(PLANE, IntMatrix([[0, 1], [1, 0]]))
        assert exc.value.power == 1
        assert exc.value.face == (0, 1)

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodular):
            validate_action(LINES, IntMatrix([[2, 0], [0, 1]]))

    def test_infinite_order(self):
        with pytest.raises(OrderExceedsCap):
            validate_action(LINES, IntMatrix([[1, 1], [0, 1]]), cap=50)

    def test_ray_not_mapped_to_ray(self):
        with pytest.raises(NotFanAutomorphism) as exc:
            validate_action(PLANE, ROT4)
        assert exc.value.kind == "ray"

    def test_cone_not_mapped_to_cone(self):
        partial = Fan(2, LINES.rays, [(0, 2), (1, 3)])
        with pytest.raises(NotFanAutomorphism) as exc:
            validate_action(partial, ROT4)
        assert (exc.value.kind, exc.value.witness) == ("cone", 0)


class TestFixedSubcomplex:
    def test_free_rotation(self, plane):
        fixed = fixed_subcomplex(*plane, 1)
        assert fixed.complex.facets == ((),)
        assert fixed.delta == 0

    def test_identity_power(self, plane, hexa):
        for fan, action in (plane, hexa):
            fixed = fixed_subcomplex(fan, action, action.order)
            assert set(fixed.complex.facets) == set(fan.maximal_cones)
            assert fixed.delta == fan.dim

    def test_reflection(self, mirror):
        fixed = fixed_subcomplex(*mirror, 1)
        assert fixed.complex.facets == ((0,), (1,))
        assert fixed.delta == 1


class TestRestrict:
    def test_degenerate(self, lines4):
        fan, action = restrict_to_fixed(*lines4, 2)
        assert fan.dim == 0 and fan.rays == () and fan.maximal_cones == ((),)
        assert action.order == 1

    def test_reflection(self, mirror):
        fan, action = restrict_to_fixed(*mirror, 1)
        assert fan.dim == 1
        assert sorted(fan.rays) == [(-1,), (1,)]
        assert action.order == 1

    def test_full(self, hexa):
        assert restrict_to_fixed(*hexa, 6) == hexa


def test_fixed_faces_are_fixed_vertexwise(corpus):
    for _, fan, action in corpus:
        for j in divisors(action.order):
            perm = action.perm_power(j)
            for face in fixed_subcomplex(fan, action, j).complex.faces():
                assert all(perm[v] == v for v in face)


def test_fixed_complexes_nest(corpus):
    for _, fan, action in corpus:
        n = action.order
        faces = {j: fixed_subcomplex(fan, action, j).complex.faces() for j in divisors(n)}
        for l in divisors(n):
            for j in divisors(l):
                assert faces[j] <= faces[l]


def test_fixed_complexes_are_spheres_of_the_fixed_dimension(corpus):
    for _, fan, action in corpus:
        for j in divisors(action.order):
            fixed = fixed_subcomplex(fan, action, j)
            assert fixed.delta == fixed_subspace_dimension(action.matrix_power(j))
            assert all(len(f) == fixed.delta for f in fixed.complex.facets)
            h = complex_h_polynomial(fixed.complex).padded(fixed.delta + 1)
            assert h == h[::-1]


def test_restriction_reproduces_fixed_complex(corpus):
    for _, fan, action in corpus:
        for l in divisors(action.order)[:-1]:
            sub, sub_action = restrict_to_fixed(fan, action, l)
            fixed = fixed_subcomplex(fan, action, l)
            if sub.dim == 0:
                assert fixed.complex.facets == ((),)
                continue
            keep = fixed_ray_indices(action, l)
            relabelled = {tuple(sorted(keep[i] for i in f)) for f in complex_from_fan(sub).facets}
            assert relabelled == set(fixed.complex.facets)
            assert all(vector_gcd(r) == 1 for r in sub.rays)
            assert action.order % sub_action.order == 0
            assert l % sub_action.order == 0
