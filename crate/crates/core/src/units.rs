//! Decibel conversions. Public configuration speaks dB; everything inside the
//! crate is linear.

#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

#[inline]
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * libm::log10(linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_points() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert_relative_eq!(db_to_linear(10.0), 10.0, max_relative = 1e-15);
        assert_relative_eq!(db_to_linear(-3.0), 0.501_187_233_627_272_2, max_relative = 1e-14);
        assert_relative_eq!(linear_to_db(db_to_linear(7.0)), 7.0, max_relative = 1e-14);
    }
}
