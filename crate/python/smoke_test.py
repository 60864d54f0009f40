"""Smoke test for the linksplit_py extension.

Build and install first:  pip install ./crates/py   (or: maturin develop -m crates/py/Cargo.toml)
"""

import linksplit_py as ls

trefoil = ls.Diagram.catalog("3_1")
assert trefoil.conway() == "1 + z^2", trefoil.conway()
assert trefoil.alexander() == "1 - t + t^2"
assert trefoil.component_count() == 1

hopf = ls.Diagram.parse("X[1,3,2,4];X[3,1,4,2]")
assert hopf.linking_matrix() == [[0, 1], [1, 0]]
lassoed, created = hopf.lasso(0)
assert lassoed.component_count() == 3 and created == 2
assert lassoed.linking_matrix() == [[0] * 3] * 3
assert lassoed.conway() == ls.Diagram.catalog("borromean").conway()

log = ls.TransformLog.from_catalog("3_1")
log.apply("component-lasso", 0)
log.apply("component-lasso", 0)
assert log.current.conway() in ("z^6 + z^8", "-z^6 - z^8"), log.current.conway()
b = log.bounds()
assert (b["lower"], b["upper"], b["exact"]) == (2, 2, True), b
assert ls.TransformLog.from_text(log.to_text()).current == log.current
assert log.anti_lasso(1).lasso_count == 1

assert ls.Diagram.catalog("7^2_6").split_bounds()["upper"] == 1

try:
    ls.Diagram.parse("X[1,2,3]")
except ValueError as e:
    assert "byte 7" in str(e)
else:
    raise AssertionError("parse error expected")

assert "borromean" in ls.catalog_names()
print("smoke test ok")
