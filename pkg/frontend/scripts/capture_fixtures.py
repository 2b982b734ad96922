"""Record real advisor-service responses as JSON fixtures for the UI tests.

Run from the repository root with the lucky13 package installed:

    python3 frontend/scripts/capture_fixtures.py

Every fixture is a {"method", "path", "status", "body"} envelope so the
tests can replay an exact request script against a stubbed fetch. Session
ids are captured as-is; the tests read them back from the create fixtures.
"""

import json
import pathlib
import warnings

warnings.filterwarnings("ignore")

from fastapi.testclient import TestClient

from lucky13.service import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

B_PROFILE = {"s": 3, "u": 8, "g": 2}
B_BET = {"range": "10-12", "number": 11}
B_REVEALS = [("S", True)] * 3 + [("U", True)] * 5 + [("G", True)]
C_PROFILE = {"s": 1, "u": 7, "g": 5}
C_BET = {"range": "7-9", "number": 9}
C_REVEALS = [("U", True), ("U", True), ("U", True), ("G", True)]
C_WHAT_IF = {"range": "10-12", "number": 10}


def save(name: str, method: str, path: str, response) -> dict:
    body = response.json()
    envelope = {
        "method": method,
        "path": path,
        "status": response.status_code,
        "body": body,
    }
    (OUT / f"{name}.json").write_text(json.dumps(envelope, indent=2) + "\n")
    return body


def capture_wizard(client: TestClient) -> None:
    save(
        "advise_382_winnings",
        "POST",
        "/advise",
        client.post("/advise", json={**B_PROFILE, "utility": "winnings"}),
    )
    save(
        "advise_all_sure",
        "POST",
        "/advise",
        client.post("/advise", json={"p": [1.0] * 13}),
    )
    save(
        "advise_175_winprob",
        "POST",
        "/advise",
        client.post("/advise", json={"s": 1, "u": 7, "g": 5, "utility": "winprob"}),
    )
    save(
        "advise_bad_counts",
        "POST",
        "/advise",
        client.post("/advise", json={"s": 7, "u": 7, "g": 7}),
    )


def capture_case_b(client: TestClient) -> None:
    view = save(
        "b_create", "POST", "/games", client.post("/games", json={**B_PROFILE, **B_BET})
    )
    gid = view["id"]
    for i, (category, correct) in enumerate(B_REVEALS, start=1):
        save(
            f"b_reveal_{i}",
            "POST",
            f"/games/{gid}/reveals",
            client.post(
                f"/games/{gid}/reveals", json={"category": category, "correct": correct}
            ),
        )
        save(f"b_view_{i}", "GET", f"/games/{gid}", client.get(f"/games/{gid}"))
    save(
        "b_offer_40000",
        "POST",
        f"/games/{gid}/offers",
        client.post(f"/games/{gid}/offers", json={"amount": 40000}),
    )
    save("b_view_offer", "GET", f"/games/{gid}", client.get(f"/games/{gid}"))
    save(
        "b_offer_equal",
        "POST",
        f"/games/{gid}/offers",
        client.post(f"/games/{gid}/offers", json={"amount": 85156.25}),
    )
    save("b_view_offer_equal", "GET", f"/games/{gid}", client.get(f"/games/{gid}"))
    # a fourth Sure reveal is impossible for this profile: real 400 body
    save(
        "b_reveal_exhausted",
        "POST",
        f"/games/{gid}/reveals",
        client.post(f"/games/{gid}/reveals", json={"category": "S", "correct": True}),
    )


def capture_case_c(client: TestClient) -> None:
    view = save(
        "c_create", "POST", "/games", client.post("/games", json={**C_PROFILE, **C_BET})
    )
    gid = view["id"]
    for i, (category, correct) in enumerate(C_REVEALS, start=1):
        save(
            f"c_reveal_{i}",
            "POST",
            f"/games/{gid}/reveals",
            client.post(
                f"/games/{gid}/reveals", json={"category": category, "correct": correct}
            ),
        )
        save(f"c_view_{i}", "GET", f"/games/{gid}", client.get(f"/games/{gid}"))
    shadow = save(
        "c_shadow_create",
        "POST",
        "/games",
        client.post("/games", json={**C_PROFILE, **C_WHAT_IF}),
    )
    sid = shadow["id"]
    for i, (category, correct) in enumerate(C_REVEALS, start=1):
        save(
            f"c_shadow_reveal_{i}",
            "POST",
            f"/games/{sid}/reveals",
            client.post(
                f"/games/{sid}/reveals", json={"category": category, "correct": correct}
            ),
        )
    save("c_shadow_view", "GET", f"/games/{sid}", client.get(f"/games/{sid}"))


def capture_errors(client: TestClient) -> None:
    save("unknown_game", "GET", "/games/nope", client.get("/games/nope"))
    view = client.post("/games", json={"s": 13, "u": 0, "g": 0, "range": "13"}).json()
    gid = view["id"]
    for _ in range(13):
        client.post(f"/games/{gid}/reveals", json={"category": "S", "correct": True})
    save(
        "reveal_complete_409",
        "POST",
        f"/games/{gid}/reveals",
        client.post(f"/games/{gid}/reveals", json={"category": "S", "correct": True}),
    )


def capture_tables(client: TestClient) -> None:
    save(
        "tables_two_winprob",
        "GET",
        "/tables/two?utility=winprob",
        client.get("/tables/two", params={"utility": "winprob"}),
    )
    save(
        "tables_three_winnings",
        "GET",
        "/tables/three?utility=winnings",
        client.get("/tables/three", params={"utility": "winnings"}),
    )


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(), raise_server_exceptions=False)
    capture_wizard(client)
    capture_case_b(client)
    capture_case_c(client)
    capture_errors(client)
    capture_tables(client)
    print(f"wrote {len(list(OUT.glob('*.json')))} fixtures to {OUT}")


if __name__ == "__main__":
    main()
