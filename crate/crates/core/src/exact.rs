//! Correctly rounded summation.
//!
//! Cumulative probabilities are built by summing atom masses. Plain
//! left-to-right addition makes the result depend on the order and grouping
//! of the terms, so two routes to the same event probability (say, the mass
//! of `{X <= t}` and of `{max(X, Y) <= t}` when these events coincide) could
//! disagree in the last bit. [`exact_sum`] returns the correctly rounded
//! value of the exact real sum, which depends only on the multiset of terms.

/// Shewchuk's nonoverlapping-partials summation with a correctly rounded
/// final step (the same algorithm as Python's `math.fsum`). Inputs must be
/// finite.
pub fn exact_sum<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut partials: Vec<f64> = Vec::new();
    for mut x in terms {
        debug_assert!(x.is_finite());
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }

    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    // Round-half-even correction when the remaining partials push the tail
    // past a halfway point.
    if let Some(&next) = partials.last() {
        if (lo < 0.0 && next < 0.0) || (lo > 0.0 && next > 0.0) {
            let y = lo * 2.0;
            let x = hi + y;
            let yr = x - hi;
            if y == yr {
                hi = x;
            }
        }
    }
    hi
}
