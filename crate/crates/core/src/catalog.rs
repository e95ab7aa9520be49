//! Standard quivers and kernels used in examples and tests.

use crate::kernel::{KernelMode, Torus, ZetaKernel};
use crate::quiver::Quiver;
use crate::scalar::Rational;

/// One vertex with `g` loops named `a`, `b`, ... (or `a0`, `a1`, ... past 26).
pub fn loop_quiver(g: usize) -> Quiver {
    let mut q = Quiver::new(["v"]).expect("valid vertex");
    for k in 0..g {
        let name = if g <= 26 { ((b'a' + k as u8) as char).to_string() } else { format!("a{k}") };
        q.add_arrow(&name, "v", "v", None).expect("valid arrow");
    }
    q
}

/// `v -> w`.
pub fn a2_quiver() -> Quiver {
    let mut q = Quiver::new(["v", "w"]).expect("valid vertices");
    q.add_arrow("a", "v", "w", None).expect("valid arrow");
    q
}

/// `v -> w` and `w -> v`.
pub fn symmetric_a2_quiver() -> Quiver {
    let mut q = a2_quiver();
    q.add_arrow("b", "w", "v", None).expect("valid arrow");
    q
}

fn zero_potential(q: Quiver, torus: Torus) -> ZetaKernel<Rational> {
    ZetaKernel::new(q, KernelMode::ZeroPotential, torus).expect("symmetric quiver")
}

pub fn arrowless() -> ZetaKernel<Rational> {
    zero_potential(loop_quiver(0), Torus::Trivial)
}

pub fn jordan() -> ZetaKernel<Rational> {
    zero_potential(loop_quiver(1), Torus::Generic)
}

pub fn jordan_trivial() -> ZetaKernel<Rational> {
    zero_potential(loop_quiver(1), Torus::Trivial)
}

pub fn two_loop() -> ZetaKernel<Rational> {
    zero_potential(loop_quiver(2), Torus::Trivial)
}

pub fn symmetric_a2() -> ZetaKernel<Rational> {
    zero_potential(symmetric_a2_quiver(), Torus::Generic)
}

pub fn tripled_jordan() -> ZetaKernel<Rational> {
    let q = loop_quiver(1).triple().expect("plain quiver");
    ZetaKernel::new(q, KernelMode::Tripled, Torus::Generic).expect("tripled quiver")
}

#[derive(Clone, Debug)]
pub struct NamedKernel {
    pub name: &'static str,
    pub kernel: ZetaKernel<Rational>,
}

/// Arrowless vertex, Jordan, two loops, symmetric A2 and tripled Jordan.
pub fn all() -> Vec<NamedKernel> {
    vec![
        NamedKernel { name: "arrowless", kernel: arrowless() },
        NamedKernel { name: "jordan", kernel: jordan() },
        NamedKernel { name: "two-loop", kernel: two_loop() },
        NamedKernel { name: "symmetric-a2", kernel: symmetric_a2() },
        NamedKernel { name: "tripled-jordan", kernel: tripled_jordan() },
    ]
}
