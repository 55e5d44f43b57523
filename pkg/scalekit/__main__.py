"""
Entry point for python -m scalekit
"""
from flask.cli import FlaskGroup

from scalekit import app

cli = FlaskGroup(
    name="scalekit",
    create_app=lambda: app,
    add_default_commands=False,
    help="Ordinal and interval scale checks for IR evaluation measures",
)

if __name__ == "__main__":
    cli.main(prog_name="scalekit")
