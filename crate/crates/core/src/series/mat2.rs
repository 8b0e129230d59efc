use super::algebra::Algebra;

/// A 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub e: [[T; 2]; 2],
}

impl<T: Algebra> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[i][j]
    }

    pub fn identity_like(t: &T) -> Self {
        Self::new(t.one_like(), t.zero_like(), t.zero_like(), t.one_like())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |i: usize, j: usize| self.e[i][0].mul(&o.e[0][j]).add(&self.e[i][1].mul(&o.e[1][j]));
        Self::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self::new(f(&self.e[0][0], &o.e[0][0]), f(&self.e[0][1], &o.e[0][1]), f(&self.e[1][0], &o.e[1][0]), f(&self.e[1][1], &o.e[1][1]))
    }

    pub fn map<U: Algebra>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.e[0][0]), f(&self.e[0][1]), f(&self.e[1][0]), f(&self.e[1][1]))
    }

    pub fn try_map<U: Algebra, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat2<U>, E> {
        Ok(Mat2::new(f(&self.e[0][0])?, f(&self.e[0][1])?, f(&self.e[1][0])?, f(&self.e[1][1])?))
    }

    pub fn det(&self) -> T {
        self.e[0][0].mul(&self.e[1][1]).sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// `[[d, -b], [-c, a]]`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.e[1][1].clone(), self.e[0][1].neg(), self.e[1][0].neg(), self.e[0][0].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.e[0][0].clone(), self.e[1][0].clone(), self.e[0][1].clone(), self.e[1][1].clone())
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[T; 2]) -> [T; 2] {
        [
            v[0].mul(&self.e[0][0]).add(&v[1].mul(&self.e[1][0])),
            v[0].mul(&self.e[0][1]).add(&v[1].mul(&self.e[1][1])),
        ]
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, v: &[T; 2]) -> [T; 2] {
        [
            self.e[0][0].mul(&v[0]).add(&self.e[0][1].mul(&v[1])),
            self.e[1][0].mul(&v[0]).add(&self.e[1][1].mul(&v[1])),
        ]
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.e[0][0], &self.e[0][1], &self.e[1][0], &self.e[1][1]]
    }
}
