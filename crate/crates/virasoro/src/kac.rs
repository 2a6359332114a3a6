//! Central charge and Kac weights as exact functions of kappa.

use crate::scalar::Field;

/// `c = (6 - k)(3k - 8) / (2k)`.
pub fn central_charge<R: Field>(kappa: &R) -> R {
    let k = kappa.clone();
    (R::from_int(6) - k.clone()) * (k.clone() * R::from_int(3) - R::from_int(8)) * (k * R::from_int(2)).inv()
}

/// `c = 1 - 6 (k - 4)^2 / (4k)`, the second form of the same quantity.
pub fn central_charge_alt<R: Field>(kappa: &R) -> R {
    let k = kappa.clone();
    let d = k.clone() - R::from_int(4);
    R::one() - d.clone() * d * R::from_int(6) * (k * R::from_int(4)).inv()
}

/// `h_{r;s} = ((r k - 4 s)^2 - (k - 4)^2) / (16 k)`.
pub fn kac_weight<R: Field>(r: &R, s: &R, kappa: &R) -> R {
    let k = kappa.clone();
    let a = r.clone() * k.clone() - s.clone() * R::from_int(4);
    let b = k.clone() - R::from_int(4);
    (a.clone() * a - b.clone() * b) * (k * R::from_int(16)).inv()
}

/// `h_{1;2} = (6 - k) / (2k)`.
pub fn h12<R: Field>(kappa: &R) -> R {
    kac_weight(&R::one(), &R::from_int(2), kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatFn;
    use crate::scalar::{rat, Ring};

    #[test]
    fn symbolic_identities() {
        let k = RatFn::param();
        assert_eq!(central_charge(&k), central_charge_alt(&k));
        let expect_h12 = (RatFn::from_int(6) - k.clone()) * (k.clone() * RatFn::from_int(2)).inv();
        assert_eq!(h12(&k), expect_h12);
        let h13 = kac_weight(&RatFn::one(), &RatFn::from_int(3), &k);
        assert_eq!(h13, (RatFn::from_int(8) - k.clone()) * k.inv());
        let h01 = kac_weight(&RatFn::zero(), &RatFn::one(), &k);
        assert_eq!(h01 * RatFn::from_int(2), (RatFn::from_int(8) - k.clone()) * RatFn::from_ratio(1, 8));
        let h0half = kac_weight(&RatFn::zero(), &RatFn::from_ratio(1, 2), &k);
        assert_eq!(
            h0half * RatFn::from_int(8),
            (k.clone() - RatFn::from_int(2)) * (RatFn::from_int(6) - k.clone()) * (k * RatFn::from_int(2)).inv()
        );
    }

    #[test]
    fn special_values() {
        assert_eq!(central_charge(&rat(6, 1)), rat(0, 1));
        assert_eq!(h12(&rat(6, 1)), rat(0, 1));
        assert_eq!(h12(&rat(8, 3)), rat(5, 8));
        assert_eq!(central_charge(&rat(8, 3)), rat(0, 1));
    }
}
