import pytest

from bockstein.chains import GroupReport
from bockstein.groups import Q, Z, Zmod, ZpInf
from bockstein.simplicial import (
    SimplicialComplex, SimplicialMap, boundary_simplex, circle,
    cohomology_of, complex_from_text, complex_to_text, degree_map_circle,
    ew_skeleton, full_simplex, homology_of, induced, map_from_text,
    map_to_text, mapping_cylinder, pontryagin_stage,
)
from bockstein.chains import induced_map as chain_induced

from oracles import mp_pair_integral


def pairs(report, degrees):
    return {k: (report[k].free_rank, report[k].orders) for k in degrees}


class TestBuilders:
    def test_face_closure(self):
        s = SimplicialComplex([(2, 0, 1)])
        assert s.f_vector() == (3, 3, 1)
        assert s.has((0, 2)) and s.has((1,))
        with pytest.raises(ValueError):
            SimplicialComplex([(0, 0, 1)])

    def test_standard_complexes(self):
        assert full_simplex(3).f_vector() == (4, 6, 4, 1)
        assert boundary_simplex(3).f_vector() == (4, 6, 4)
        assert boundary_simplex(3).euler() == 2
        assert circle(5).f_vector() == (5, 5)

    def test_sphere_homology(self):
        rep = homology_of(boundary_simplex(4))
        assert pairs(rep, range(4)) == {
            0: (1, ()), 1: (0, ()), 2: (0, ()), 3: (1, ())}

    def test_skeleton(self):
        k4 = full_simplex(3).skeleton(1)
        assert k4.f_vector() == (4, 6)
        assert homology_of(k4)[1] == GroupReport(3, (), Z)

    def test_full_subcomplex(self):
        s = full_simplex(2)
        sub = s.full_subcomplex(lambda v: v != 2)
        assert sub.f_vector() == (2, 1)

    def test_relative_pair(self):
        disk, sphere = full_simplex(2), boundary_simplex(2)
        rep = homology_of(disk, relative_to=sphere)
        assert pairs(rep, range(3)) == {0: (0, ()), 1: (0, ()), 2: (1, ())}
        co = cohomology_of(disk, Z, relative_to=sphere)
        assert co[2] == GroupReport(1, (), Z)


class TestMaps:
    def test_validation(self):
        with pytest.raises(ValueError):
            SimplicialMap(circle(4), circle(3), {i: i for i in range(4)})
        with pytest.raises(ValueError):
            SimplicialMap(circle(3), circle(3), {0: 0})

    def test_covering_chain_map(self):
        f = degree_map_circle(3)
        rep = induced(f, 1)
        assert rep.matrix in (((3,),), ((-3,),))
        assert induced(f, 1, Zmod(3)).matrix == ((0,),)
        assert induced(f, 1, Zmod(2)).injective
        assert induced(f, 1, Q).surjective

    def test_collapsing_map_kills_chains(self):
        f = SimplicialMap(circle(3), full_simplex(0),
                          {i: 0 for i in range(3)})
        rep = induced(f, 1, Q)
        assert rep.matrix == ()          # the point has no 1-classes
        assert rep.surjective and not rep.injective

    def test_text_round_trip(self):
        x = boundary_simplex(2)
        assert complex_from_text(complex_to_text(x)) == x
        f = degree_map_circle(2)
        text = map_to_text(f)
        g = map_from_text(text, f.source, f.target)
        assert g.vertex_map == f.vertex_map


class TestMappingCylinder:
    def test_shape_and_homotopy_type(self):
        for p in (2, 3):
            cyl = mapping_cylinder(degree_map_circle(p))
            assert cyl.complex.euler() == 0
            rep = homology_of(cyl.complex)
            assert pairs(rep, (0, 1)) == {0: (1, ()), 1: (1, ())}
            # Both ends are embedded circles.
            assert pairs(homology_of(cyl.domain), (0, 1)) == {
                0: (1, ()), 1: (1, ())}
            assert pairs(homology_of(cyl.target), (0, 1)) == {
                0: (1, ()), 1: (1, ())}

    def test_pair_integral(self):
        for p in (2, 3):
            cyl = mapping_cylinder(degree_map_circle(p))
            rep = homology_of(cyl.complex, relative_to=cyl.domain)
            assert pairs(rep, range(3)) == mp_pair_integral(p)

    def test_pair_h2_by_coefficients(self):
        # H^2 of the pair is Ext(Z/p, G): Z/p for Z and Z/p itself,
        # nothing over the rationals, a coprime field, or a divisible
        # group.
        for p in (2, 3):
            cyl = mapping_cylinder(degree_map_circle(p))
            h2 = {}
            for coeff in (Z, Q, Zmod(5), Zmod(p), ZpInf(p)):
                rep = cohomology_of(cyl.complex, coeff,
                                    relative_to=cyl.domain)
                h2[coeff.render()] = (rep[2].free_rank, rep[2].orders)
            assert h2["Z"] == (0, (p,))
            assert h2["Q"] == (0, ())
            assert h2["Z/5"] == (0, ())
            assert h2[Zmod(p).render()] == (0, (p,))
            assert h2[ZpInf(p).render()] == (0, ())

    def test_retraction_section(self):
        cyl = mapping_cylinder(degree_map_circle(2))
        r, i = cyl.retraction, cyl.target_inclusion
        comp = {v: r.vertex_map[i.vertex_map[v]]
                for v in cyl.target.vertices()}
        assert comp == {v: v for v in cyl.target.vertices()}

    def test_collapse_is_mod_p_iso_on_pairs(self):
        for p in (2, 3):
            cyl = mapping_cylinder(degree_map_circle(p))
            cone, xi, base = cyl.collapse()
            assert homology_of(cone)[1].is_zero     # a cone is acyclic
            rep = induced(xi, 2, Zmod(p), relative=(cyl.domain, base),
                          cohomology=True)
            assert rep.injective and rep.surjective
            assert rep.matrix not in (((0,),),)

    def test_collapse_rational_pairs_vanish(self):
        cyl = mapping_cylinder(degree_map_circle(2))
        cone, xi, base = cyl.collapse()
        rep = induced(xi, 2, Q, relative=(cyl.domain, base),
                      cohomology=True)
        assert all(not any(row) for row in rep.matrix)


class TestPontryaginStages:
    def test_stage_guards(self):
        with pytest.raises(ValueError):
            pontryagin_stage(4, 1)
        with pytest.raises(ValueError):
            pontryagin_stage(2, 3)

    def test_first_stage_is_sphere(self):
        stages, bondings = pontryagin_stage(2, 1)
        assert stages[0] == boundary_simplex(3)
        assert len(stages) == 2 and len(bondings) == 1

    def test_bonding_iso_mod_p(self):
        for p in (2, 3):
            stages, bondings = pontryagin_stage(p, 2)
            for q in bondings:
                rep = induced(q, 2, Zmod(p), cohomology=True)
                assert rep.injective and rep.surjective, (p, q)

    def test_second_stage_rational_h2_vanishes(self):
        stages, _ = pontryagin_stage(2, 2)
        l2 = stages[1]
        assert cohomology_of(l2, Q)[2].is_zero
        assert homology_of(l2, Q)[1].free_rank > 0

    def test_euler_consistency(self):
        # f-vector Euler characteristic equals the alternating sum of
        # rational Betti numbers, on every stage.
        for p in (2, 3):
            stages, _ = pontryagin_stage(p, 2)
            for l in stages:
                rep = homology_of(l, Q)
                chi = sum((-1) ** k * rep[k].free_rank
                          for k in range(l.dim + 1))
                assert chi == l.euler(), (p, l)

    def test_mod_p_h2_survives(self):
        stages, _ = pontryagin_stage(2, 2)
        for l in stages[1:]:
            assert not cohomology_of(l, Zmod(2))[2].is_zero


class TestEdwardsWalsh:
    def test_identity_for_integers(self):
        c = full_simplex(3)
        ew, incl = ew_skeleton(c, Z, 2)
        assert ew.ranks == c.skeleton(2).chain_complex().ranks
        assert chain_induced(incl, 2, Zmod(2)).injective

    def test_mod_p_modification(self):
        from bockstein.chains import homology
        for p in (2, 3):
            ew, incl = ew_skeleton(full_simplex(3), Zmod(p), 2)
            rep = homology(ew)
            assert rep[2] == GroupReport(0, (p,), Z)
            assert rep[1].is_zero
            assert chain_induced(incl, 2, Zmod(p)).injective

    def test_bigger_complex(self):
        ew, incl = ew_skeleton(full_simplex(4), Zmod(2), 2)
        from bockstein.chains import homology
        rep = homology(ew)
        assert not rep[2].is_zero
        assert chain_induced(incl, 2, Zmod(2)).injective

    def test_guards(self):
        with pytest.raises(ValueError):
            ew_skeleton(full_simplex(3), Zmod(2), 1)
        with pytest.raises(ValueError):
            ew_skeleton(full_simplex(3), Zmod(2, 2), 2)
        with pytest.raises(ValueError):
            ew_skeleton(full_simplex(3), Q, 2)
