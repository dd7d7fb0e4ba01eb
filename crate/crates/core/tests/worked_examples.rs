//! The worked examples: diagrams from the corpus reproduce the displayed
//! presentations up to renaming, and the constructions agree with the
//! displayed link presentations in coloring counts.

mod common;

use common::*;
use fquandle::constructions::cable_presentation_unsimplified;
use fquandle::functor::test_counts;
use fquandle::{bq, connected_sum, corpus, periodic_link, satellite, Sign};

#[test]
fn pretzel_tangle_presentation() {
    let m = bq(&corpus::tangle("pretzel"));
    assert!(same_up_to_renaming(&m, &morphism(PRETZEL_TANGLE)));
}

#[test]
fn granny_summands() {
    assert!(same_up_to_renaming(&bq(&corpus::tangle("trefoil_reverse")), &morphism(TREFOIL_31_TANGLE)));
    assert!(same_up_to_renaming(&bq(&corpus::tangle("trefoil_mirror")), &morphism(TREFOIL_31_MIRROR_TANGLE)));
}

#[test]
fn satellite_pieces() {
    assert!(same_up_to_renaming(&bq(&corpus::tangle("cable_pattern")), &morphism(CABLE_PATTERN)));
    assert!(same_up_to_renaming(&bq(&corpus::tangle("double_pattern")), &morphism(DOUBLE_PATTERN)));
    assert!(same_up_to_renaming(&bq(&corpus::tangle("figure_eight")), &morphism(FIGURE_EIGHT_TANGLE)));
    assert!(same_up_to_renaming(&bq(&corpus::tangle("trefoil")), &morphism(TREFOIL_DOUBLE_TANGLE)));
}

#[test]
fn cable_relations_match_the_displayed_sets() {
    use Sign::*;
    let fig8 = cable_presentation_unsimplified(&morphism(FIGURE_EIGHT_TANGLE), &[Plus, Plus]).unwrap();
    assert_eq!(fig8.presentation().relations().len(), 8);
    let renamed = fig8.rename(&|n: &str| n.replace('_', "")).unwrap();
    assert_eq!(relation_set(renamed.presentation()), relation_set(figure_eight_cable().presentation()));
    assert_eq!(renamed.map_bottom(), figure_eight_cable().map_bottom());
    assert_eq!(renamed.map_top(), figure_eight_cable().map_top());

    let double = cable_presentation_unsimplified(&morphism(TREFOIL_DOUBLE_TANGLE), &[Minus, Plus]).unwrap();
    let renamed = double.rename(&|n: &str| n.replace('_', "")).unwrap();
    assert_eq!(relation_set(renamed.presentation()), relation_set(trefoil_double_cable().presentation()));
    assert_eq!(renamed.map_bottom(), trefoil_double_cable().map_bottom());
    assert_eq!(renamed.map_top(), trefoil_double_cable().map_top());
}

#[test]
fn pretzel_knot_counts() {
    let m = bq(&corpus::tangle("pretzel"));
    let direct = test_counts(&periodic_link(&m, 3).unwrap());
    assert_eq!(direct, test_counts(&pretzel_reduced()));
    assert_eq!(direct, test_counts(&periodic_link(&morphism(PRETZEL_TANGLE), 3).unwrap()));
}

#[test]
fn granny_counts() {
    let sum = connected_sum(&bq(&corpus::tangle("trefoil_reverse")), &bq(&corpus::tangle("trefoil_mirror"))).unwrap();
    let c = test_counts(&sum);
    assert_eq!(c[0], 27);
    assert_eq!(c, test_counts(&pres(GRANNY_REDUCED)));
    assert_eq!(c, test_counts(&pres(GRANNY_FULL)));
}

#[test]
fn satellite_counts() {
    use Sign::*;
    let cable = satellite(&bq(&corpus::tangle("cable_pattern")), &bq(&corpus::tangle("figure_eight")), &[Plus, Plus])
        .unwrap();
    let c = test_counts(&cable);
    assert_eq!(c, test_counts(&cable_satellite_full()));
    assert_eq!(c, test_counts(&pres(CABLE_SATELLITE_REDUCED)));

    let double = satellite(&bq(&corpus::tangle("double_pattern")), &bq(&corpus::tangle("trefoil")), &[Minus, Plus])
        .unwrap();
    let c = test_counts(&double);
    assert_eq!(c, test_counts(&double_satellite_full()));
    assert_eq!(c, test_counts(&pres(DOUBLE_SATELLITE_REDUCED)));
}
