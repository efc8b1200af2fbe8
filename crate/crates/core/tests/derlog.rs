use std::sync::Arc;

use rxlip_core::derlog::{derlog_generators, euler_field, hamiltonian_fields, is_tangent, module_equal};
use rxlip_core::{parse_poly, Error, VarContext, VectorField, WeightSystem};

fn ctx(vars: &[&str]) -> Arc<VarContext> {
    VarContext::new(vars.iter().copied(), false, false).unwrap()
}

fn field(c: &Arc<VarContext>, comps: &[&str]) -> VectorField {
    VectorField::new(c, comps.iter().map(|s| parse_poly(s, c).unwrap()).collect()).unwrap()
}

#[test]
fn cross_cap_matches_listed_generators() {
    let c = ctx(&["u", "v", "w"]);
    let ws = WeightSystem::new(vec![1, 2, 2]).unwrap();
    let dl = derlog_generators(&parse_poly("v^2 - u^2*w", &c).unwrap(), &ws).unwrap();
    let listed = vec![
        field(&c, &["u", "2*v", "2*w"]),
        field(&c, &["u", "v", "0"]),
        field(&c, &["0", "u^2", "2*v"]),
        field(&c, &["v", "u*w", "0"]),
    ];
    assert!(module_equal(dl.generators(), &listed).unwrap());
    let dl = dl.with_generators(listed).unwrap();
    assert_eq!(dl.degrees(), &[0, 0, 0, 1]);
    assert_eq!(dl.stratum_dim(), 0);
}

#[test]
fn four_variable_quadric_matches_listed_generators() {
    let c = ctx(&["x", "y", "z", "w"]);
    let ws = WeightSystem::new(vec![3, 3, 3, 2]).unwrap();
    let dl = derlog_generators(&parse_poly("x^2+y^2+z^2+w^3", &c).unwrap(), &ws).unwrap();
    let listed = vec![
        field(&c, &["3*x", "3*y", "3*z", "2*w"]),
        field(&c, &["2*y", "-2*x", "0", "0"]),
        field(&c, &["2*z", "0", "-2*x", "0"]),
        field(&c, &["3*w^2", "0", "0", "-2*x"]),
        field(&c, &["0", "3*w^2", "0", "-2*y"]),
        field(&c, &["0", "2*z", "-2*y", "0"]),
        field(&c, &["0", "0", "3*w^2", "-2*z"]),
    ];
    assert!(module_equal(dl.generators(), &listed).unwrap());
    let mut degs = dl.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![0, 0, 0, 0, 1, 1, 1]);
}

// For a weighted homogeneous isolated singularity the module is generated by
// the Euler field and the Hamiltonian fields.
#[test]
fn isolated_singularities_euler_plus_hamiltonians() {
    let cases: [(&[&str], Vec<u32>, &str); 4] = [
        (&["u", "v", "w"], vec![7, 5, 7], "2*u^5 - v^7 + w^5"),
        (&["x", "y"], vec![3, 2], "x^2 + y^3"),
        (&["x", "y"], vec![1, 1], "x^3 - x*y^2"),
        (&["x", "y", "z"], vec![1, 1, 1], "x^2 + y^2 + z^2"),
    ];
    for (vars, w, phi) in cases {
        let c = ctx(vars);
        let ws = WeightSystem::new(w).unwrap();
        let phi = parse_poly(phi, &c).unwrap();
        let dl = derlog_generators(&phi, &ws).unwrap();
        let mut oracle = vec![euler_field(&c, &ws)];
        oracle.extend(hamiltonian_fields(&phi).into_iter().map(|(_, f)| f));
        assert!(module_equal(dl.generators(), &oracle).unwrap(), "{phi}");
        for g in dl.generators() {
            assert!(is_tangent(g, &phi));
        }
    }
}

#[test]
fn ex_first_family_degrees() {
    let c = ctx(&["u", "v", "w"]);
    let ws = WeightSystem::new(vec![7, 5, 7]).unwrap();
    let dl = derlog_generators(&parse_poly("2*u^5 - v^7 + w^5", &c).unwrap(), &ws).unwrap();
    let mut degs = dl.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![0, 21, 23, 23]);
}

#[test]
fn non_reduced_and_zero_rejected() {
    let c = ctx(&["x", "y"]);
    let ws = WeightSystem::uniform(2);
    assert!(matches!(derlog_generators(&parse_poly("(x+y)^2", &c).unwrap(), &ws), Err(Error::NotSquarefree(_))));
    assert!(derlog_generators(&parse_poly("0", &c).unwrap(), &ws).is_err());
}

#[test]
fn normal_crossings() {
    let c = ctx(&["x", "y"]);
    let dl = derlog_generators(&parse_poly("x*y", &c).unwrap(), &WeightSystem::uniform(2)).unwrap();
    let oracle = vec![field(&c, &["x", "0"]), field(&c, &["0", "y"])];
    assert!(module_equal(dl.generators(), &oracle).unwrap());
}
