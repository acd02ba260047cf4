"""Principal minors of the seven Ver(2,2) scalings next to the published pattern."""

from toricmle.families import VER22_FACES, ver2_sigma_test
from toricmle.fixtures import VER22_TABLE


def fmt(zero):
    return "0" if zero else "!=0"


print(f"{'row':>3}  {'faces':<22} {'computed':<22} published")
for i, (C, published, mldeg) in enumerate(VER22_TABLE, start=1):
    _, minors = ver2_sigma_test(2, C=C)
    got = [minors[S] == 0 for S in VER22_FACES]
    vals = " ".join(str(minors[S]) for S in VER22_FACES)
    flag = "" if tuple(got) == published else "   <-- differs"
    print(f"{i:>3}  {vals:<22} {' '.join(map(fmt, got)):<22} {' '.join(map(fmt, published))}{flag}")
