use ecgroups::census::sweep;
use ecgroups::{ClassNumberTable, Ratio};

/// Largest `s` with `s^2 | N` and `s | p - 1`, for any trace.
fn s_t(p: u64, t: i64) -> u64 {
    let n = (p as i64 + 1 - t) as u64;
    (1..).take_while(|s| s * s <= n).filter(|s| n % (s * s) == 0 && (p - 1) % s == 0).max().unwrap()
}

#[test]
fn row_invariants_below_20000() {
    let p_max = 20_000;
    let table = ClassNumberTable::build(4 * p_max).unwrap();
    let mut rows = 0;
    for row in sweep(2, p_max, &table).unwrap() {
        rows += 1;
        assert!(row.m_at_max.contains(&1), "p = {}", row.p);
        assert!(row.lower_sandwich <= Ratio::from_integer(row.g), "p = {}", row.p);
        assert!(row.g <= row.i);
        assert!(row.t_max.windows(2).all(|w| w[0] < w[1]));
        if row.ratio == Ratio::from_integer(1) {
            assert!(row.same_t);
            let unit = row.t_max.iter().any(|&t| s_t(row.p, t) == 1);
            assert!(unit, "p = {}: no maximizing trace with s_t = 1", row.p);
        }
    }
    assert_eq!(rows, 2262);
}
