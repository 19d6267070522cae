use ctlab::geometry::{
    build_case1, build_case2, build_rank2_bipartite, default_pairing, find_case1_involution, verify_geometry, Pairing, Pg3,
};
use ctlab::Error;

#[test]
fn case1_structure() {
    let pg = Pg3::new(5).unwrap();
    let phi = find_case1_involution(&pg).unwrap();
    let g = build_case1(pg, &phi).unwrap();
    let fixed = g.line_ok.iter().filter(|ok| !**ok).count();
    assert_eq!(g.counts(), (156, 806 - fixed, 156));
    // every point lies on exactly one bad line, every plane contains exactly one
    for p in g.points() {
        let bad = (0..g.pg.lines.len()).filter(|&l| !g.line_ok[l] && g.pg.on_line(p, l)).count();
        assert_eq!(bad, 1);
        let planes = g.planes().into_iter().filter(|&pi| g.point_plane(p, pi)).count();
        assert_eq!(planes, 5 * 5 + 5 + 1 - 6);
    }
    for pi in g.planes() {
        assert_eq!(g.pg.lines_of_plane[pi].iter().filter(|&&l| !g.line_ok[l]).count(), 1);
    }
    assert_eq!(g.collinearity_diameter(), Some(2));
}

#[test]
fn case2_structure() {
    let pg = Pg3::new(5).unwrap();
    let pairing = default_pairing(&pg);
    let g = build_case2(pg, &pairing).unwrap();
    assert_eq!(g.counts(), (150, 625, 150));
    let pts = g.points();
    for &a in &pts {
        for &b in &pts {
            if a != b && !g.collinear(a, b) {
                let l = g.pg.line(a, b);
                assert!(g.pg.lines[l].iter().any(|&x| g.pg.on_line(x, pairing.line)));
            }
        }
    }
    assert_eq!(g.collinearity_diameter(), Some(2));
}

#[test]
fn case2_q4_is_recorded() {
    let pg = Pg3::new(4).unwrap();
    let g = build_case2(pg.clone(), &default_pairing(&pg)).unwrap();
    let r = verify_geometry(&g, 500, 0);
    assert_eq!(r.diameter, Some(2));
    assert!(r.triangles_nongeometric > 0);
    println!("case 2, q = 4: {} undecomposable triangles", r.triangle_undecomposable);
}

#[test]
fn invalid_inputs() {
    let pg = Pg3::new(5).unwrap();
    let bad = Pairing { line: 0, pairs: vec![(0, 0)] };
    assert!(matches!(build_case2(pg.clone(), &bad), Err(Error::InvalidPairing(_))));
    assert!(matches!(find_case1_involution(&Pg3::new(8).unwrap()), Err(Error::NoInvolution(_))));
}

#[test]
fn rank2_graphs() {
    let g = build_rank2_bipartite(2);
    assert_eq!((g.side, g.edges.len()), (3, 6));
    assert!(g.is_connected());
    let g = build_rank2_bipartite(5);
    assert!(g.is_connected() && g.degrees().iter().all(|&d| d == 5));
    assert!(!build_rank2_bipartite(1).is_connected());
}

#[test]
fn edges_export() {
    let pg = Pg3::new(3).unwrap();
    let g = build_case2(pg.clone(), &default_pairing(&pg)).unwrap();
    let edges = g.collinearity_edges();
    assert!(edges.iter().all(|&(a, b)| a < b && g.collinear(a, b)));
    // 36 points, each collinear to 36 - 1 - (9 - 1) others
    assert_eq!(edges.len(), 36 * 27 / 2);
}
