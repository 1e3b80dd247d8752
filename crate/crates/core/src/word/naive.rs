//! Direct window-scanning reference implementations.
//!
//! These are the slow cross-checks for the suffix-automaton engine; they
//! follow the definitions literally and share no code with it.

use std::collections::HashSet;

/// Number of distinct length-`n` windows of `word`.
pub fn count_factors(word: &[u8], n: usize) -> usize {
    if n == 0 || n > word.len() {
        return 0;
    }
    word.windows(n).collect::<HashSet<_>>().len()
}

/// Least `m` such that `word[..m]` contains two occurrences of some
/// length-`n` word, scanning windows left to right.
pub fn return_time(word: &[u8], n: usize) -> Option<usize> {
    if n == 0 {
        return None;
    }
    let mut seen = HashSet::new();
    for (start, window) in word.windows(n).enumerate() {
        if !seen.insert(window) {
            return Some(start + n);
        }
    }
    None
}

/// Whether `pattern` occurs in `word`.
pub fn contains(word: &[u8], pattern: &[u8]) -> bool {
    pattern.is_empty() || word.windows(pattern.len()).any(|w| w == pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_head() {
        let fib = [0u8, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1];
        assert_eq!(count_factors(&fib, 3), 4);
        assert_eq!(return_time(&fib, 1), Some(3));
        assert_eq!(return_time(&fib, 2), Some(5));
        assert_eq!(return_time(&[0, 1, 2], 1), None);
    }
}
