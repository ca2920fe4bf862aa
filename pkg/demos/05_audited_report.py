"""Config in, audited report out, and an independent re-check of the serialized numbers."""

import json
from pathlib import Path

from weakkam import analyze, audit, load_config, render

config = Path(__file__).resolve().parent.parent / "tests" / "golden" / "e3.json"
cfg = load_config(config)
report = analyze(cfg)

print("verdict :", report["verdict"])
print("I_hat   :", report["truncation"]["I_hat"], " beta:", report["beta"])
print("checks  :", sum(c["ok"] for c in report["checks"]), "of", len(report["checks"]), "hold")
for c in report["checks"][:6]:
    print(f"  {c['name']:<32} {c['lhs']} {c['rel']} {c['rhs']}")

# serialize, read back, recompute everything
text = render(report)
print("audit   :", audit(cfg, json.loads(text)) or "clean")
print("config hash", report["config_hash"][:16], "...")
