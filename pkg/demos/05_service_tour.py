"""
Driving the HTTP service
========================

Boots the API in-process, imports a space, runs an assessment, asks for
clusters and the dendrogram: the same loop the web frontend performs.
"""

import os

from fastapi.testclient import TestClient

from variant.service import create_app

HERE = os.path.dirname(os.path.abspath(__file__))

app = create_app(data_dir=os.path.join(HERE, "service-data"))
client = TestClient(app)

csv_text = open(os.path.join(HERE, "..", "data", "boil_water.csv"), encoding="utf-8").read()

print("POST /spaces")
body = client.post("/spaces", json={"space_id": "boil-water", "csv": csv_text}).json()
print(f"  imported {body['space_id']} with {body['n_concepts']} concepts,"
      f" {len(body['validation'])} validation notes")

print("POST /spaces/boil-water/assess")
result = client.post(
    "/spaces/boil-water/assess",
    json={"provider": "hash", "weights": "paper-default", "k": 2},
).json()
print(f"  overall variety {result['overall']:.3f}")
print(f"  cluster labels {result['clusters']['labels']}")

print("GET /spaces/boil-water/dendrogram")
tree = client.get("/spaces/boil-water/dendrogram").json()
for a, b, h in tree["merges"]:
    print(f"  join {a} + {b} at {h:.3f}")

# a real deployment runs the same app under uvicorn: `variant serve --port 8712`
