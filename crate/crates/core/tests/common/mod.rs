#![allow(dead_code)]

use kronrep::functors::MorphismPair;
use kronrep::homalg::hom_basis;
use kronrep::linalg::{int, Matrix};
use kronrep::rep::{p0, p1, DimVector, KroneckerRep};
use num_traits::Zero;
use rand::Rng;

/// `a_0..=a_n` for `a_{k+2} = d·a_{k+1} − a_k`, in i128.
pub fn a_oracle(d: i128, n: usize) -> Vec<i128> {
    let mut a = vec![0i128, 1];
    while a.len() <= n {
        let k = a.len();
        a.push(d * a[k - 1] - a[k - 2]);
    }
    a.truncate(n + 1);
    a
}

/// P_n(2) with maps `[I_n; 0]` and `[0; I_n]`.
pub fn p_model_k2(n: usize) -> KroneckerRep {
    let top = Matrix::from_fn(n + 1, n, |i, j| if i == j { int(1) } else { int(0) });
    let bottom = Matrix::from_fn(n + 1, n, |i, j| if i == j + 1 { int(1) } else { int(0) });
    KroneckerRep::new(2, DimVector::new(n, n + 1), vec![top, bottom]).unwrap()
}

/// Cokernel of a morphism with injective components.
pub fn cokernel(f: &MorphismPair) -> KroneckerRep {
    let l1 = f.f1.transpose().kernel_basis().transpose();
    let l2 = f.f2.transpose().kernel_basis().transpose();
    let gram = &l1 * &l1.transpose();
    let right_inv = &l1.transpose() * &gram.inverse().expect("full row rank");
    let maps = f.target.maps().iter().map(|b| &(&l2 * b) * &right_inv).collect();
    KroneckerRep::new(f.target.r(), DimVector::new(l1.nrows(), l2.nrows()), maps).unwrap()
}

/// P_0(d), …, P_n(d), with P_{k+1} the cokernel of the almost split map P_{k−1} → P_k^d
/// assembled from a Hom basis.
pub fn p_models_ar(d: usize, n: usize) -> Vec<KroneckerRep> {
    let mut out = vec![p0(d), p1(d)];
    while out.len() <= n {
        let k = out.len() - 1;
        let (a, b) = (&out[k - 1], &out[k]);
        let h = hom_basis(a, b).unwrap();
        assert_eq!(h.dim, d);
        let refs1: Vec<&Matrix> = h.basis.iter().map(|f| &f.f1).collect();
        let refs2: Vec<&Matrix> = h.basis.iter().map(|f| &f.f2).collect();
        let target = b.power(d);
        let f =
            MorphismPair::new(a.clone(), target, Matrix::vconcat(&refs1).unwrap(), Matrix::vconcat(&refs2).unwrap())
                .unwrap();
        out.push(cokernel(&f));
    }
    out.truncate(n + 1);
    out
}

pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if n == 0 || !g.det().is_zero() {
            return g;
        }
    }
}

/// `g2·M_i·g1⁻¹` for random invertible g1, g2.
pub fn base_change<R: Rng + ?Sized>(m: &KroneckerRep, rng: &mut R) -> KroneckerRep {
    let d = m.dim();
    let g1 = random_invertible(d.x, rng);
    let g2 = random_invertible(d.y, rng);
    let g1_inv = g1.inverse().unwrap();
    let maps = m.maps().iter().map(|a| &(&g2 * a) * &g1_inv).collect();
    KroneckerRep::new(m.r(), d, maps).unwrap()
}

pub fn direct_sum_all(r: usize, parts: &[KroneckerRep]) -> KroneckerRep {
    parts.iter().fold(KroneckerRep::zero(r), |acc, p| acc.direct_sum(p).unwrap())
}
