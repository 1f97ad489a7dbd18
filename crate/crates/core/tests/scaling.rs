use cisnim::analysis::{build_sn, h_in, halve_check};
use cisnim::emit::FigureGrid;
use cisnim::{solve, ForbiddenSet, Position};

fn f110() -> ForbiddenSet {
    std::iter::once(Position::new(1, 1, 0)).collect()
}

// The literal h-scaling relation misses by n 4^(k-1): the line x = 2y adds n
// points to R_2n that the halving map does not account for, and from there on
// every step scales by exactly four.
#[test]
fn h_scaling_with_boundary_term() {
    let t = solve(40, &f110()).unwrap();
    for n in [9u32, 17, 33] {
        let sn = build_sn(&t, n, n << 4).unwrap();
        let h0 = h_in(&sn, n).unwrap();
        for k in 1..=3u32 {
            let hk = h_in(&sn, n << k).unwrap();
            assert_eq!(
                hk,
                (h0 << (2 * k)) + ((n as u64) << (2 * (k - 1))),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn halving_counts_scale_by_four_after_first_step() {
    let t = solve(40, &f110()).unwrap();
    for n in [9u32, 17] {
        assert!(!halve_check(&t, n, 1, n << 4)
            .unwrap()
            .counts_scale_by_four());
        for k in 2..=3 {
            let rep = halve_check(&t, n, k, n << 4).unwrap();
            assert!(rep.counts_scale_by_four(), "{rep:?}");
            assert!(rep
                .offending
                .iter()
                .all(|((x, y), _)| x / 2 == 2 * (y / 2) || *x == 2 * y));
        }
    }
}

// Coarse scale-invariance witness: halving the 2N figure onto the N figure
// keeps the count of S cells near 4:1 and cell-wise majority membership.
#[test]
fn figure_downsampling_witness() {
    let t = solve(1000, &f110()).unwrap();
    let small = FigureGrid::from_table(&t, 500).unwrap();
    let large = FigureGrid::from_table(&t, 1000).unwrap();
    let counts = large.halved_s_counts();
    let (mut coarse, mut fine, mut agree) = (0u64, 0u64, 0u64);
    for x in 0..500 {
        for y in 0..500 {
            let here = small.in_s(x, y);
            let k = counts[(x * 500 + y) as usize];
            coarse += here as u64;
            fine += k as u64;
            agree += (here == (k >= 2)) as u64;
        }
    }
    let ratio = fine as f64 / coarse as f64;
    assert!((3.9..=4.1).contains(&ratio), "ratio {ratio}");
    assert!(agree as f64 >= 0.99 * 250_000.0, "agreement {agree}");
}
