use ancestry_core::{
    assign_intervals, check_lpo, classic_mark, decorate, enumerate_up_to, mark, mark_detailed,
    oracle_is_ancestor, unpack, LabelLayout, OffsetWidth, SchemeParams,
};

#[test]
fn every_tree_up_to_nine_nodes() {
    let params = SchemeParams::for_family_size(16).unwrap();
    let corpus = enumerate_up_to(9).unwrap();
    assert_eq!(corpus.len(), 1 + 1 + 2 + 4 + 9 + 20 + 48 + 115 + 286);
    for tree in &corpus {
        let det = mark_detailed(tree, &LabelLayout::new(params)).unwrap();
        let lab = mark(tree, &params).unwrap();
        assert_eq!(lab, det.labeling);
        let classic = classic_mark(tree, 16).unwrap();
        for u in tree.nodes() {
            for v in tree.nodes() {
                let expected = oracle_is_ancestor(tree, u, v);
                assert_eq!(
                    lab.decide(u, v),
                    expected,
                    "{:?} ({u}, {v})",
                    tree.signed_parents()
                );
                assert_eq!(classic.decide(u, v), expected);
            }
            let decoded = unpack(&lab.layout, lab.labels[u]).unwrap();
            assert_eq!(decoded.own, det.assignment.endpoints(u));
        }
        let d = decorate(tree);
        let asg = assign_intervals(&d, &params).unwrap();
        let report = check_lpo(&d, &asg.intervals, &params);
        assert!(report.passed(), "{report}");
        let constant = match lab.layout.offset_width() {
            OffsetWidth::Wide => 8,
            OffsetWidth::Tight => 7,
        };
        assert_eq!(
            lab.layout.total_bits(),
            params.ell() + 6 * params.lambda() + constant
        );
    }
}
