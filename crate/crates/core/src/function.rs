use num_complex::Complex64;

/// A function that is holomorphic away from a finite set of known poles.
///
/// The pipelines sample these on level curves and need the derivative for
/// Dirichlet-type norms.
pub trait Holomorphic {
    fn eval(&self, z: Complex64) -> Complex64;

    fn derivative(&self, z: Complex64) -> Complex64;

    /// Known isolated singularities; used for clearance checks.
    fn poles(&self) -> Vec<Complex64> {
        Vec::new()
    }

    /// Coefficients `F_1..F_d` of an exact expansion `Σ F_k ζ^{-k}` about the
    /// origin, when the function is a finite tail there.
    fn origin_tail(&self) -> Option<Vec<Complex64>> {
        None
    }
}

impl<T: Holomorphic + ?Sized> Holomorphic for &T {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        (**self).derivative(z)
    }
    fn poles(&self) -> Vec<Complex64> {
        (**self).poles()
    }
    fn origin_tail(&self) -> Option<Vec<Complex64>> {
        (**self).origin_tail()
    }
}

/// Closure pair `(f, f')` with optional declared poles.
pub struct FnPair<F, D> {
    f: F,
    df: D,
    poles: Vec<Complex64>,
}

impl<F, D> FnPair<F, D>
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    pub fn new(f: F, df: D) -> Self {
        Self {
            f,
            df,
            poles: Vec::new(),
        }
    }

    pub fn with_poles(mut self, poles: Vec<Complex64>) -> Self {
        self.poles = poles;
        self
    }
}

impl<F, D> Holomorphic for FnPair<F, D>
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        (self.df)(z)
    }
    fn poles(&self) -> Vec<Complex64> {
        self.poles.clone()
    }
}

/// The Cauchy kernel `z ↦ 1/(z − ζ)`.
#[derive(Debug, Clone, Copy)]
pub struct CauchyKernel {
    pub pole: Complex64,
}

impl CauchyKernel {
    pub fn new(pole: Complex64) -> Self {
        Self { pole }
    }
}

impl Holomorphic for CauchyKernel {
    fn eval(&self, z: Complex64) -> Complex64 {
        (z - self.pole).inv()
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        let d = z - self.pole;
        -(d * d).inv()
    }
    fn poles(&self) -> Vec<Complex64> {
        vec![self.pole]
    }
}
