use cycloseq::coeffs::{c_general, c_weight, pascal_identity_check, Convention};
use cycloseq::oracle::tableau;

#[test]
fn dimension_coefficients_count_tableaux() {
    for s in 0..=2 {
        for i in 0..=10 {
            for j in 0..=i {
                for k in 0..=i {
                    assert_eq!(c_general(s, i, j, k), tableau::dimension_count(s, i, j, k), "s={s} ({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn weight_coefficients_count_tableaux() {
    for s in 1..=2 {
        for m in 1..=10 {
            for h in 1..=m {
                for g in 0..m {
                    assert_eq!(c_weight(s, m, g, h), tableau::weight_count(s, m, g, h), "s={s} m={m} g={g} h={h}");
                }
            }
        }
    }
    // Depth zero forgets the height.
    for m in 1..=10 {
        for g in 0..m {
            assert_eq!(c_weight(0, m, g, 1), tableau::weight_count_all_heights(0, m, g), "m={m} g={g}");
        }
    }
}

#[test]
fn pascal_identity_holds_with_tableau_diagonal() {
    for k in 0..=3 {
        assert!(pascal_identity_check(k, 12, Convention::Tableau).holds(), "k={k}");
        assert!(k == 0 || pascal_identity_check(k, 12, Convention::Formula).holds(), "k={k}");
    }
    let report = pascal_identity_check(0, 12, Convention::Formula);
    assert!(!report.holds());
}
