import pytest

import hochlab


def test_cobar_is_polynomial_on_two_classes():
    dims = hochlab.cobar_dims(5, -6, 18)
    assert dims[(0, 0)] == 1
    assert dims[(-1, 3)] == 1
    assert dims[(-1, 7)] == 1
    assert dims[(-2, 10)] == 1  # β1·β2
    assert (-1, 5) not in dims


def test_sphere_hochschild_generators():
    dims = hochlab.hochschild_dims("sphere:d=5:A=6", 5, 16)
    assert dims == {(0, 0): 1, (-2, 4): 1, (-3, 8): 1, (-4, 8): 1, (-5, 12): 1}


def test_bracket_of_alpha():
    assert hochlab.bracket("sphere:d=5:A=4", "e{12}", "e{12}") == "2*e{12,13} - 2*e{13,23}"
    assert hochlab.poisson_image_check(7)


def test_framed_e2_and_audit():
    e2 = hochlab.framed_e2_check(5)
    assert e2["passed"]
    assert e2["mismatches"] == []
    report = hochlab.audit(7)
    assert len(report["forced"]) == 1
    assert report["forced"][0]["page"] == 2
    assert report["forced"][0]["source"] == [-1, 11]
    assert report["forced"][0]["target"] == [-3, 12]


def test_obstruction_on_witness_and_framed():
    w = hochlab.obstruction("witness:m=2")
    assert w["verdict"] == "nonzero"
    assert hochlab.compare_with_d2("witness:m=3")["equal"]
    assert hochlab.choice_independence("witness:m=2:padded", trials=10, seed=5)["passed"]
    assert hochlab.obstruction("framed:d=5")["verdict"] == "zero"


def test_errors_map_to_exception_types():
    with pytest.raises(hochlab.InvalidArgument):
        hochlab.audit(6)
    with pytest.raises(hochlab.ParseError):
        hochlab.bracket("sphere:d=5:A=4", "nope", "e{12}")
    with pytest.raises(hochlab.Error):
        hochlab.hochschild_dims("witness:m=2", 2, 8)
