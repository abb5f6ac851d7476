use fitkit::fitting::{fitting_subgroup, fstar};
use fitkit::tower::{build_degenerate_tower, Invariant, Tower};
use fitkit::{Caps, Perm};

#[test]
fn four_level_tower_shape() {
    let caps = Caps::default();
    let t = build_degenerate_tower(&[2, 3, 2, 3], 4, &caps).unwrap();
    let shape: Vec<(u128, usize)> = t.levels().iter().map(|g| (g.order(), g.degree())).collect();
    assert_eq!(shape, vec![(2, 2), (18, 6), (1152, 12), (839808, 36)]);
    assert_eq!(t.order(4).unwrap().to_string(), "2^7*3^8");
    for i in 2..=4 {
        let g = t.level(i).unwrap();
        let f = fitting_subgroup(g).unwrap();
        assert_eq!(fstar(g, &caps).unwrap(), f);
        assert!(f.is_nilpotent());
    }
    let cert = t.fd_certificate(4, &caps).unwrap();
    assert!(cert.valid);
    assert!(t.stable_image(3, Invariant::Fitting, 4, &caps).unwrap().is_trivial());
    assert!(t.functoriality_holds(&caps).unwrap());
}

#[test]
fn three_prime_tower() {
    let t = build_degenerate_tower(&[2, 3, 5], 3, &Caps::default()).unwrap();
    assert_eq!(t.level(3).unwrap().order(), 281250);
    assert_eq!(t.level(3).unwrap().degree(), 30);
    assert!(t.fd_certificate(3, &Caps::default()).unwrap().valid);
}

#[test]
fn witnesses_exist_one_level_up() {
    let caps = Caps::default();
    let t = build_degenerate_tower(&[2, 3, 2], 3, &caps).unwrap();
    let x = t.element(1, Perm::parse(2, "(1 2)").unwrap()).unwrap();
    let w = t.primitive_witness(&x, 3, &caps).unwrap().unwrap();
    assert_eq!((w.level, w.quotient_order), (2, 6));

    let g2 = t.level(2).unwrap();
    let v2 = fitting_subgroup(g2).unwrap();
    let y = v2.generators().iter().find(|s| !s.is_identity()).unwrap().clone();
    let x = t.element(2, y).unwrap();
    let w = t.primitive_witness(&x, 3, &caps).unwrap().unwrap();
    assert_eq!(w.level, 3);
    assert_eq!(w.quotient_order, 288);
    t.verify_witness(&x, &w, &caps).unwrap();
}

#[test]
fn round_trip_preserves_file() {
    let t = build_degenerate_tower(&[2, 3, 2], 3, &Caps::default()).unwrap();
    let json = t.to_json();
    let back = Tower::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
}
