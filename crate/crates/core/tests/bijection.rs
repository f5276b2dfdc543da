mod common;

use cohen_lenstra::bijection::{compose, decompose, render_diagram, DurfeeDecomposition};

#[test]
fn box_bounds_hold_on_decompose_output() {
    for nu in common::all_partitions_up_to(16) {
        let d = decompose(&nu);
        d.validate().unwrap_or_else(|e| panic!("{nu}: {e}"));
        assert_eq!(d.mu.size(), nu.greatest_part());
        for (i, b) in d.boxes.iter().enumerate() {
            assert!(b.len() <= d.mu.parts()[i]);
            assert!(d.width_bound(i).admits(b.greatest_part()));
        }
    }
}

#[test]
fn witness_round_trip_from_generated_witnesses() {
    for nu in common::all_partitions_up_to(14) {
        let d = decompose(&nu);
        let back = compose(&d).unwrap();
        assert_eq!(decompose(&back), d);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<DurfeeDecomposition>(&json).unwrap(), d);
    }
}

#[test]
fn diagram_has_one_line_per_row() {
    for nu in common::all_partitions_up_to(9) {
        let d = decompose(&nu);
        let text = render_diagram(&d);
        let rows = text.lines().filter(|l| !l.starts_with('-') && !l.starts_with('(')).count();
        assert_eq!(rows, nu.greatest_part());
        let cells: usize = text.chars().filter(|&c| c == '#' || c == 'o').count();
        assert_eq!(cells, nu.size());
    }
}

#[test]
fn first_square_is_durfee_square() {
    // nu and nu' share the Durfee square, so mu_1 is the usual Durfee size of nu
    for nu in common::all_partitions_up_to(14) {
        let durfee = (1..=nu.len()).take_while(|&i| nu.part(i) >= i).count();
        let d = decompose(&nu);
        assert_eq!(d.mu.part(1), durfee, "{nu}");
    }
}
