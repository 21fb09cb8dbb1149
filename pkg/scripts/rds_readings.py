"""How the three A4 x C3 rows validate under the two readings of their table.

Reading A takes the row literally: S = L0^ - x R1^ - y R2^ - xy R3^.
Reading B uses S = L0^ - R0 g R1^ with R0 = 1 + a + a^2 b and g searched.
"""

from hadamard36.catalog import load_catalog, verify_row


def main():
    cat = load_catalog()
    for row in cat.rows_for("g9"):
        o = verify_row(cat, row)
        d = o.details
        print(f"{row.label}: {o.status}, readings valid: {o.interpretation}")
        print(f"  reading A valid: {d['A_valid']}")
        print(f"  reading B valid for g in: {', '.join(d['B_valid_g'])}")
        print(f"  reading B lands in A's class for g in: {', '.join(d.get('B_matches_A_class_g', [])) or 'none'}")


if __name__ == "__main__":
    main()
