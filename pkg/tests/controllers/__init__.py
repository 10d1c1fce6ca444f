"""コントローラ関連のテスト。"""
