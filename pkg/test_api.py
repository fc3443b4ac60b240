import io


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "healthy"


def test_validate_json(client, s3_text):
    response = client.post("/api/validate", json={"text": s3_text})
    assert response.status_code == 200
    body = response.get_json()
    assert body["valid"]
    assert (body["name"], body["order"], body["elements"]) == ("S3", 3, ["0", "1", "T"])


def test_validate_upload(client, s3_text):
    data = {"semirings": [(io.BytesIO(s3_text.encode()), "s3.sr")]}
    response = client.post("/api/validate", data=data, content_type="multipart/form-data")
    assert response.status_code == 200
    assert response.get_json()["semirings"][0]["file"] == "s3.sr"


def test_validate_upload_wrong_extension(client, s3_text):
    data = {"semirings": [(io.BytesIO(s3_text.encode()), "s3.pdf")]}
    response = client.post("/api/validate", data=data, content_type="multipart/form-data")
    assert response.status_code == 400
    assert response.get_json()["error"] == "invalid-param"


def test_validate_parse_error(client):
    response = client.post("/api/validate", json={"text": "semiring X\n"})
    assert response.status_code == 400
    body = response.get_json()
    assert body["error"] == "parse-error"
    assert body["message"].startswith("line 2")


def test_missing_body_field(client):
    response = client.post("/api/validate", json={})
    assert response.status_code == 400
    assert response.get_json()["error"] == "invalid-request"


def test_ideals(client, s3_text):
    response = client.post("/api/ideals", json={"text": s3_text, "subtractive_only": True})
    body = response.get_json()
    assert body["count"] == 3
    assert [row["point"] for row in body["ideals"]] == ["P0", "P2"]
    assert [row["proper"] for row in body["ideals"]] == [True, False]


def test_closure(client, s3_text):
    response = client.post("/api/closure", json={"text": s3_text, "ideal": ["0", "T"]})
    assert response.status_code == 200
    body = response.get_json()
    assert body["closure"] == "{0,1,T}"
    assert body["subtractive"] is False
    assert body["witness"] == ["T", "1"]


def test_closure_not_an_ideal(client, s3_text):
    response = client.post("/api/closure", json={"text": s3_text, "ideal": ["0", "1"]})
    assert response.status_code == 400
    assert response.get_json()["error"] == "not-an-ideal"


def test_topology(client, s3_text):
    response = client.post("/api/topology", json={"text": s3_text, "semantics": "downset"})
    body = response.get_json()
    assert body["subbasis"] == ["{P0}", "{P0,P1,P2}"]
    assert body["closed_sets"] == 3
    assert body["t0"]["holds"] is False


def test_topology_cap(client, s3_text):
    response = client.post("/api/topology", json={"text": s3_text, "semantics": "fixedpoint", "max_closed": 2})
    assert response.status_code == 422
    assert response.get_json()["error"] == "cap-exceeded"


def test_check(client, s3_text):
    response = client.post("/api/check", json={"texts": [s3_text], "claims": ["C12"], "semantics": "downset"})
    body = response.get_json()
    assert body["lines"] == ["CLAIM C12 STRUCT S3 SEM downset RESULT fails WITNESS D={P0,P1,P2} generic={P1,P2}"]
    assert body["exit_code"] == 0


def test_check_bad_semantics(client, s3_text):
    response = client.post("/api/check", json={"texts": [s3_text], "semantics": "sideways"})
    assert response.status_code == 400


def test_validate_upload_not_utf8(client):
    data = {"semirings": [(io.BytesIO(b"semiring X\n\xff\n"), "bad.sr")]}
    response = client.post("/api/validate", data=data, content_type="multipart/form-data")
    assert response.status_code == 400
    body = response.get_json()
    assert body["error"] == "parse-error"
    assert body["message"].startswith("line 2")
