use hardsoft::algebra::{q, BigRational, BivarPoly};
use hardsoft::engine::assemble_kernel_expansion;

type P = BivarPoly<BigRational>;

fn poly(den: i64, terms: &[((u32, u32), i64)]) -> P {
    BivarPoly::from_terms(terms.iter().map(|&(k, c)| (k, q(c, den))))
}

#[test]
fn first_order() {
    let k = assemble_kernel_expansion(1).unwrap();
    assert_eq!(*k.p(1, 0, 0), poly(10, &[((2, 0), -3), ((1, 1), -3), ((0, 2), -3)]));
    assert_eq!(*k.p(1, 0, 1), poly(5, &[((0, 0), 1)]));
    assert_eq!(*k.p(1, 1, 0), poly(5, &[((0, 0), 1)]));
    assert_eq!(*k.p(1, 1, 1), poly(10, &[((1, 0), 3), ((0, 1), 3)]));
}

#[test]
fn second_order_constant_block() {
    let k = assemble_kernel_expansion(2).unwrap();
    let expect = poly(1400, &[((0, 0), 56), ((3, 0), -235), ((0, 3), -235), ((2, 1), -319), ((1, 2), -319)]);
    assert_eq!(*k.p(2, 0, 0), expect);
    k.check_invariants().unwrap();
}

#[test]
fn third_order_table() {
    let k = assemble_kernel_expansion(3).unwrap();
    let d = 126000;
    let p00 = poly(d, &[
        ((7, 0), -567), ((6, 1), -567), ((5, 2), -567), ((4, 3), 1134), ((4, 0), -11309), ((3, 4), 1134),
        ((3, 1), -24989), ((2, 5), -567), ((2, 2), -23504), ((1, 6), -567), ((1, 3), -24989), ((1, 0), 3640),
        ((0, 7), -567), ((0, 4), -11309), ((0, 1), 3640),
    ]);
    let p01 = poly(d, &[
        ((5, 0), 8613), ((4, 1), 7479), ((3, 2), 1134), ((2, 3), -8046), ((2, 0), -13060), ((1, 4), -8046),
        ((1, 1), 9980), ((0, 5), -6912), ((0, 2), 16640),
    ]);
    let p11 = poly(d, &[
        ((6, 0), 567), ((5, 1), 567), ((4, 2), -1134), ((3, 3), -1134), ((3, 0), 19715), ((2, 4), -1134),
        ((2, 1), 23045), ((1, 5), 567), ((1, 2), 23045), ((0, 6), 567), ((0, 3), 19715), ((0, 0), 3680),
    ]);
    assert_eq!(*k.p(3, 0, 0), p00);
    assert_eq!(*k.p(3, 0, 1), p01);
    assert_eq!(*k.p(3, 1, 0), p01.swap_xy());
    assert_eq!(*k.p(3, 1, 1), p11);
}

#[test]
fn fourth_order_is_fast_and_consistent() {
    let t = std::time::Instant::now();
    let k = assemble_kernel_expansion(4).unwrap();
    assert!(t.elapsed().as_secs() < 60);
    k.check_invariants().unwrap();
    println!("{:?}", k.degrees());
}
