# Generated by Django 5.2.1 on 2026-10-19 09:12

import django.db.models.deletion
import django.utils.timezone
from django.conf import settings
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
        migrations.swappable_dependency(settings.AUTH_USER_MODEL),
    ]

    operations = [
        migrations.CreateModel(
            name="VerificationRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "rule",
                    models.CharField(
                        choices=[
                            ("linearity_d", "linearity d"),
                            ("product", "product"),
                            ("quotient", "quotient"),
                            ("constant_zero", "constant zero"),
                            ("chain_composition", "chain composition"),
                            ("order_composition", "order composition"),
                            ("continuity", "continuity"),
                            ("rolle", "rolle"),
                            ("mvt", "mvt"),
                            ("extended_mvt", "extended mvt"),
                            ("linearity_i", "linearity i"),
                            ("inverse", "inverse"),
                            ("ftc", "ftc"),
                            ("parts", "parts"),
                            ("abs_bound", "abs bound"),
                            ("sup_bound", "sup bound"),
                            ("integral_composition", "integral composition"),
                            ("integral_mvt", "integral mvt"),
                            ("average_value", "average value"),
                            ("rl_integral_bridge", "rl integral bridge"),
                            ("rl_derivative_bridge", "rl derivative bridge"),
                            ("reduction_m_fractional", "reduction m fractional"),
                            ("reduction_conformable", "reduction conformable"),
                            ("ml_deriv_identity", "ml deriv identity"),
                            ("ml_integral_identity", "ml integral identity"),
                        ],
                        max_length=40,
                    ),
                ),
                ("passed", models.BooleanField()),
                ("max_residual", models.FloatField()),
                ("tolerance", models.FloatField()),
                ("case_count", models.PositiveIntegerField(default=0)),
                ("warnings", models.JSONField(blank=True, default=list)),
                (
                    "created_at",
                    models.DateTimeField(default=django.utils.timezone.now),
                ),
                (
                    "requested_by",
                    models.ForeignKey(
                        blank=True,
                        null=True,
                        on_delete=django.db.models.deletion.SET_NULL,
                        to=settings.AUTH_USER_MODEL,
                    ),
                ),
            ],
            options={
                "ordering": ["-created_at", "-id"],
                "indexes": [
                    models.Index(
                        fields=["rule", "created_at"],
                        name="calculus_run_rule_idx",
                    )
                ],
            },
        ),
        migrations.CreateModel(
            name="VerificationCase",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("index", models.PositiveIntegerField()),
                ("inputs", models.JSONField()),
                ("residual", models.FloatField()),
                ("witness", models.FloatField(blank=True, null=True)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="cases",
                        to="calculus.verificationrun",
                    ),
                ),
            ],
            options={
                "ordering": ["run", "index"],
                "unique_together": {("run", "index")},
            },
        ),
    ]
