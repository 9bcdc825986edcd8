"""One full platform loop in a temporary directory.

Creates a site, uploads synthetic photos over the HTTP API, runs the queue
worker through preprocessing and a reconstruction run, then fetches the
published model the way a viewer would.

Run with: python3 demos/end_to_end.py
"""

import tempfile

from fastapi.testclient import TestClient

from crowdmesh.config import Config
from crowdmesh.service.app import create_app
from crowdmesh.service.auth import make_token
from crowdmesh.orchestrator.worker import Worker
from crowdmesh.synthetic.images import encode_jpeg, make_clean_scene

SIGNING_KEY = "demo-signing-key"


def main() -> None:
    with tempfile.TemporaryDirectory() as root:
        config = Config().with_overrides(
            storage__root=root,
            auth__static_key=SIGNING_KEY,
            auth__admin_tokens=["demo-admin"],
            run__min_images=5,
        )
        app = create_app(config)
        client = TestClient(app)
        store = app.state.store
        worker = Worker(store, config, worker_id="demo-worker")

        site = store.create_site(
            "Sun Temple Demo", country="India", state="Odisha",
            description="demo heritage site",
        )
        print(f"site created: {site.verbose_id}")

        token = make_token(SIGNING_KEY, "demo@example.org", "demo@example.org",
                           name="Demo Contributor", verified=True)
        files = [
            ("images", (f"photo{i}.jpg",
                        encode_jpeg(make_clean_scene(i), quality=92),
                        "image/jpeg"))
            for i in range(5)
        ]
        resp = client.post(
            "/api/contributions",
            data={"site_id": site.id},
            files=files,
            headers={"Authorization": f"Bearer {token}"},
        )
        body = resp.json()
        print(f"contribution accepted: {body['accepted_count']} images "
              f"({resp.status_code})")

        processed = worker.drain()
        print(f"worker processed {processed} preprocessing jobs")
        good = store.good_images_for_site(site.id)
        print(f"{len(good)} images labeled GOOD and eligible")

        resp = client.post(
            "/api/admin/runs",
            json={"site_id": site.id},
            headers={"Authorization": "Bearer demo-admin"},
        )
        run_id = resp.json()["run_id"]
        print(f"run {run_id} queued")
        worker.drain()

        status = client.get(
            f"/api/admin/runs/{run_id}",
            headers={"Authorization": "Bearer demo-admin"},
        ).json()
        print(f"run state: {status['state']}, identifier: {status['ark']}")
        stages = [e for e in status["stage_log"]
                  if not e["stage"].startswith("event:")]
        print(f"stages completed: {len(stages)}")

        model = client.get(f"/api/sites/{site.verbose_id}/model")
        print(f"model served: {model.status_code}, "
              f"{len(model.content):,} bytes, "
              f"etag {model.headers['etag'][:18]}...")

        listing = client.get("/api/sites", params={"q": "sun"}).json()
        entry = listing["items"][0]
        print(f"public listing: {entry['name']} [{entry['status']}] "
              f"model at {entry['model_url']}")


if __name__ == "__main__":
    main()
