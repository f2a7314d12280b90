use annrel::liealg::build_sl;
use annrel::rat::{rat, Rat};
use annrel::verma::VermaSlice;
use num::Zero;

fn p(n: i64) -> usize {
    if n < 0 {
        return 0;
    }
    let n = n as usize;
    let mut t = vec![0usize; n + 1];
    t[0] = 1;
    for k in 1..=n {
        for s in k..=n {
            t[s] += t[s - k];
        }
    }
    t[n]
}

fn main() {
    let a = build_sl(2).unwrap();
    let slice = VermaSlice::new(rat(1), vec![Rat::zero()], 8);
    // logged w_dim values per (n, mu)
    let logged: &[(i64, i64, usize)] = &[
        (-2, -4, 9), (-2, -2, 7), (-2, 0, 4), (-2, 2, 2), (-2, 4, 1),
        (-3, -6, 22), (-3, -4, 21), (-3, -2, 17), (-3, 0, 11), (-3, 2, 6), (-3, 4, 3), (-3, 6, 1),
        (-4, -8, 51), (-4, -6, 50), (-4, -4, 47), (-4, -2, 39), (-4, 0, 27), (-4, 2, 16), (-4, 4, 8), (-4, 6, 3), (-4, 8, 1),
        (-5, -10, 108), (-5, -8, 107), (-5, -6, 105), (-5, -4, 98), (-5, -2, 82), (-5, 0, 59), (-5, 2, 37), (-5, 4, 20), (-5, 6, 9), (-5, 8, 3), (-5, 10, 1),
        (-6, -12, 221), (-6, -10, 220), (-6, -8, 218), (-6, -6, 212), (-6, -4, 197), (-6, -2, 166), (-6, 0, 123), (-6, 2, 80), (-6, 4, 46), (-6, 6, 22), (-6, 8, 9), (-6, 10, 3), (-6, 12, 1),
        (-7, -14, 429), (-7, -12, 428), (-7, -10, 426), (-7, -8, 420), (-7, -6, 407), (-7, -4, 376), (-7, -2, 319), (-7, 0, 241), (-7, 2, 162), (-7, 4, 96), (-7, 6, 50), (-7, 8, 22), (-7, 10, 9), (-7, 12, 3), (-7, 14, 1),
    ];
    let mut bad = 0;
    for &(n, mu, w) in logged {
        let cap = ((-2 * n + mu.abs()) / 2) as usize;
        let m = slice.basis_at(&a, n, Some(&[mu]), cap).len();
        let expect = p(-n - (mu / 2) * (mu / 2));
        let q = m as i64 - w as i64;
        if q != expect as i64 {
            bad += 1;
            println!("MISMATCH n={n} mu={mu}: m={m} w={w} q={q} expect={expect}");
        }
    }
    println!("done, {bad} mismatches of {}", logged.len());
}
